#pragma once

#include <string>
#include <vector>

#include "pdolab/symbols.hpp"

namespace pdolab {

// ---------------------------------------------------------------- quantization

// a(x_i, xi_k) on the full lattice: data[(k * comps + c) * size + i].
struct SymbolTable {
  Grid grid;
  int l = 1;
  std::vector<cplx> data;

  static SymbolTable build(const Symbol& a, const Grid& g);
  int comps() const { return l * l; }
  const cplx* at(std::size_t k, int c) const { return data.data() + (k * comps() + c) * grid.size(); }
};

// Exact sum with per-term phases; O(N^{2n}) complex exponentials.
SampledField quantize_reference(const Symbol& a, const SampledField& u);
// Tabulated symbol times a cached phase table; same sum, reordered.
SampledField quantize(const SymbolTable& t, const SampledField& u);
SampledField quantize(const Symbol& a, const SampledField& u);

// ---------------------------------------------------------------- mollification

struct MollifierFamily {
  enum class Kind { Gaussian, Bump };
  Kind kind = Kind::Gaussian;
  std::vector<double> eps;

  static MollifierFamily gaussian(std::vector<double> eps);
  static MollifierFamily bump(std::vector<double> eps);
  static std::vector<double> dyadic_eps(int q_first, int q_last);  // 2^-q_first .. 2^-q_last

  // Fourier multiplier of phi_eps on the lattice, FFT order; value at 0 is 1.
  std::vector<double> multiplier(const Grid& g, double e) const;
  // Lattice kernel phi_eps(x_i) (centered at 0, periodized) and its lattice integral.
  std::vector<double> kernel(const Grid& g, double e) const;
  double mass(const Grid& g, double e) const;
};

Symbol mollify(const Symbol& a, const MollifierFamily& fam, double e);

struct ConvergenceReport {
  std::vector<double> eps;
  std::vector<double> value;
  double slope = 0.0;  // least-squares d log(value) / d log(eps)
  bool monotone = true;
  bool flagged = false;
  double final_ratio() const;
};

// |a_eps - a| in C^{mtilde,t} S^m_{rho,delta} with k xi-derivatives, over fam.eps.
ConvergenceReport mollify_convergence(const Symbol& a, const Grid& g, const MollifierFamily& fam, int k,
                                      double t, const SeminormOptions& o = {});

// ---------------------------------------------------------------- symbol smoothing

struct SmoothingSplit {
  Symbol sharp;
  Symbol flat;
  double gamma = 0.0;
};

SmoothingSplit symbol_smoothing(const Symbol& a, double gamma);

struct DecayFit {
  double exponent = 0.0;
  std::vector<double> xi;
  std::vector<double> sup;
};

// Least-squares fit of log sup_x|a(x, xi)| against log <xi> along the first axis, xi in [lo, hi].
DecayFit fit_decay_exponent(const Symbol& a, const Grid& g, double lo, double hi);

// m - (gamma - delta)(mtilde + tau) + 0.05 (gamma - delta) tau
double smoothing_target_exponent(const SymbolMeta& meta, double gamma);

// ---------------------------------------------------------------- composition

// sum_{|g| < k} (1/g!) d_xi^g a1 * D_x^g a2, with spectral x-derivatives of a2.
Symbol compose_expansion(const Symbol& a1, const Symbol& a2, int k, double hxi = 1e-2);

struct RemainderOptions {
  int theta_nodes = 8;
  double mode_cutoff = 1e-14;  // x-Fourier modes of D^g a2 below this relative size are dropped
  double hxi = 1e-2;
};

// R_k on the lattice. For a2 periodic in x the oscillatory integrals r_{g,theta} reduce to
// sum_p c_p(xi) e^{i p x} d_xi^g a1(x, xi + theta p), with c_p the x-Fourier modes of D^g a2.
Symbol compose_remainder(const Symbol& a1, const Symbol& a2, int k, const RemainderOptions& o = {});

// Largest gap between theta_nodes and 2 * theta_nodes on the sampled xi, relative to
// max(sup|a1| sup|a2|, <xi>^{m1 + m2}).
double remainder_node_agreement(const Symbol& a1, const Symbol& a2, int k, const Grid& g,
                                const RemainderOptions& o = {});

// ---------------------------------------------------------------- parametrix

struct Parametrix {
  Symbol b;
  double m = 0.0;
  double R = 1.0;
  EllipticReport gate;
};

// b = psi(R^-2(|x|^2 + |xi|^2)) (a <xi>^{-m})^{-1}; gate checked on g with constant C0.
Parametrix build_parametrix(const Symbol& a, const Grid& g, double R, double C0);
// Q u = <D>^{-m} op(b) u.
SampledField apply_parametrix(const Parametrix& q, const SampledField& u);

// a psi(x / R) + a(inf, xi)(1 - psi(x / R)).
Symbol localize_at_infinity(const Symbol& a, double R);
// x-independent symbol a(inf, xi).
Symbol limit_symbol(const Symbol& a);

}  // namespace pdolab
