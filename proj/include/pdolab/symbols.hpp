#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pdolab/lattice.hpp"
#include "pdolab/spaces.hpp"

namespace pdolab {

struct SymbolMeta {
  double m = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  int mtilde = 0;
  double tau = 0.5;
  int M = -1;               // xi-derivative budget, -1 = unbounded
  int l = 1;                // matrix size
  bool smooth_x = true;     // smooth in x (Hoelder data ignored)
  bool x_periodic = true;   // false: x-derivative sups skip the wrap-around band
};

// out[c * g.size() + i] = a_c(x_i, xi), c = row * l + col.
using SliceEval = std::function<void(const Grid& g, const Vec2& xi, cplx* out)>;
using PointEval = std::function<void(const Vec2& x, const Vec2& xi, cplx* out)>;
using LimitEval = std::function<void(const Vec2& xi, cplx* out)>;

class Symbol {
 public:
  std::string id;
  SymbolMeta meta;
  PointEval point;   // optional closed form
  SliceEval slicer;  // always present
  LimitEval limit;   // optional a(infinity, xi)

  static Symbol from_point(std::string id, SymbolMeta meta, PointEval f, LimitEval lim = {});
  static Symbol from_slice(std::string id, SymbolMeta meta, SliceEval f, LimitEval lim = {});

  int comps() const { return meta.l * meta.l; }
  bool has_limit() const { return static_cast<bool>(limit); }

  SampledField slice(const Grid& g, const Vec2& xi) const;
  void slice_into(const Grid& g, const Vec2& xi, cplx* out) const;
  // Entry (0,0) of the closed form; throws if no point evaluator.
  cplx at(const Vec2& x, const Vec2& xi) const;
};

Symbol scaled(const Symbol& a, cplx c);
Symbol sum(const Symbol& a, const Symbol& b, cplx cb = 1.0);
Symbol component(const Symbol& a, int row, int col);

struct SeminormOptions {
  double hxi = 1e-2;
  int max_xi_per_axis = 128;  // lattice xi subsampling for large grids
  double window = 0.0;        // Hoelder window, <= 0 default
  bool exhaustive = false;
};

// Lattice frequencies used for sup_xi (all if small, otherwise an even subsample incl. 0 and the edge).
std::vector<Vec2> xi_samples(const Grid& g, int max_per_axis);

// Mask excluding points within the stencil reach of the periodic wrap (empty if periodic).
Mask interior_mask(const Grid& g, const SymbolMeta& meta, int reach = 3);

// d_xi^alpha a(., xi) by tensor 4th-order differences with step hxi.
SampledField xi_derivative(const Symbol& a, const Grid& g, const Vec2& xi, const MultiIndex& alpha,
                           double hxi = 1e-2);
// Same stencil applied to a(infinity, .); returns l*l entries.
std::vector<cplx> limit_xi_derivative(const Symbol& a, const Vec2& xi, const MultiIndex& alpha,
                                      double hxi = 1e-2);

struct SeminormEntry {
  MultiIndex alpha{0, 0};
  MultiIndex beta{0, 0};
  double value = 0.0;
  bool se = false;  // Se_alpha contribution included
};

struct SeminormReport {
  int k = 0;
  double value = 0.0;
  bool se_present = false;
  std::vector<SeminormEntry> entries;
};

SeminormReport smooth_seminorm(const Symbol& a, const Grid& g, int k, const SeminormOptions& o = {});
SeminormReport nonsmooth_seminorm(const Symbol& a, const Grid& g, int k, int mtilde, double s,
                                  const SeminormOptions& o = {});

struct EllipticReport {
  bool elliptic = true;
  double margin = 0.0;  // min |det a| <xi>^{-ml} over the checked region
  Vec2 witness_x{0, 0};
  Vec2 witness_xi{0, 0};
  std::size_t checked = 0;
  std::vector<double> margin_by_xi;  // per lattice xi (FFT order), +inf if nothing checked
};

EllipticReport is_elliptic(const Symbol& a, const Grid& g, double R, double C0);

struct Profile {
  std::vector<double> r;
  std::vector<double> value;
  double global_max = 0.0;
  double tail_max = 0.0;
  bool decays = false;  // tail_max < tail_ratio * global_max
};

// Radial max-binning of a per-point field; the tail is the outer tail_fraction of the radius range.
Profile radial_profile(const Grid& g, const std::vector<double>& v, double tail_fraction = 0.2,
                       double tail_ratio = 0.05);

Profile slowly_varying_profile(const Symbol& a, const Grid& g, const MultiIndex& alpha,
                               const MultiIndex& beta, const SeminormOptions& o = {});

// shift is in lattice steps (periodic translation).
double unif_modulus(const Symbol& a, const Grid& g, const MultiIndex& alpha, const MultiIndex& shift,
                    const SeminormOptions& o = {});

struct UnifReport {
  std::vector<double> h;
  std::vector<double> modulus;
  bool passes = false;  // modulus at the smallest shift below ratio * modulus at the largest
};
UnifReport unif_predicate(const Symbol& a, const Grid& g, const MultiIndex& alpha, double ratio = 0.05,
                          const SeminormOptions& o = {});

Profile limit_decay_profile(const Symbol& a, const Grid& g, const MultiIndex& alpha,
                            const SeminormOptions& o = {});

// sup_xi ||d^alpha a(., xi)||_{C^k_b} <xi>^{-e} with e = mtilde - rho|alpha| + delta k
// and with the symbol order in place of mtilde.
struct CbRatio {
  double with_mtilde = 0.0;
  double with_order = 0.0;
};
CbRatio cb_ratio(const Symbol& a, const Grid& g, const MultiIndex& alpha, int k,
                          const SeminormOptions& o = {});

// Closed-form corpus.
using SymbolParams = std::map<std::string, double>;

struct SymbolInfo {
  std::string name;
  std::string description;
};

std::vector<SymbolInfo> symbol_registry();
bool has_symbol(const std::string& name);
Symbol make_symbol(const std::string& name, const SymbolParams& params = {});

}  // namespace pdolab
