#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "pdolab/symbols.hpp"

namespace pdolab {

// W_out T W_in^{-1} in Fourier coordinates; T maps the lattice transform of u to that of op(a)u.
// Rows and columns are indexed c * N^n + k.
struct OperatorMatrix {
  std::string symbol_id;
  Grid grid;
  int l = 1;
  double m = 0.0;
  SpaceSpec spec;  // target space; the source is (s + m, p)
  Eigen::MatrixXcd M;
  std::vector<double> w_out, w_in;

  const Eigen::VectorXd& singular_values() const;  // descending, computed once

 private:
  mutable std::optional<Eigen::VectorXd> sv_;
};

constexpr std::size_t kMaxAssembly = 4096;

OperatorMatrix assemble(const Symbol& a, const Grid& g, const SpaceSpec& spec);
// B must be assembled at target spec (s + m_A, p); the product maps (s + m_A + m_B, p) -> (s, p).
OperatorMatrix compose(const OperatorMatrix& A, const OperatorMatrix& B);

// Physical samples of a right vector v (coefficients W_in^{-1} v) and of a left vector y under the
// dual weighting (coefficients W_out y).
SampledField source_field(const OperatorMatrix& M, const Eigen::VectorXcd& v);
SampledField dual_field(const OperatorMatrix& M, const Eigen::VectorXcd& y);

struct IndexOptions {
  double tol = 1e-8;             // relative rank threshold
  double gap_gate = 10.0;
  double interior = 0.5;         // |x| <= interior * L counts as interior
  double interior_mass = 0.5;    // required share of |u|^2 inside
};

struct IndexReport {
  std::string symbol_id;
  SpaceSpec spec;
  bool proxy = false;  // p != 2
  int small = 0;       // singular values below threshold
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int index = 0;
  double threshold = 0.0;
  double gap = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool flagged = false;
  std::optional<int> winding;
  std::vector<SampledField> kernel;  // interior near-kernel vectors, physical samples
};

IndexReport numerical_index(const OperatorMatrix& M, const IndexOptions& o = {});

struct WindingResult {
  int winding = 0;
  double raw = 0.0;  // accumulated phase / 2 pi
  double half_width = 0.0;
};

// Phase winding of a along the positively oriented boundary of [-Rb, Rb]^2 in (x, xi).
// Rb defaults to 0.9 min(L, xi_max). Gate: is_elliptic(a, g, R, C0).
WindingResult winding_index(const Symbol& a, const Grid& g, double R, double C0, double Rb = 0.0,
                            int samples_per_side = 2048);

// Admissible s window for a's class data: ((1 - rho) n / p - (1 - delta)(mtilde + tau), mtilde + tau).
bool spec_admissible(const SymbolMeta& meta, const SpaceSpec& spec, int n);

struct SweepResult {
  std::vector<IndexReport> rows;
  bool invariant = false;  // all non-flagged indices equal, at least one non-flagged row
  int index = 0;
};

SweepResult invariance_sweep(const Symbol& a, const Grid& g, const std::vector<SpaceSpec>& specs,
                             const IndexOptions& o = {});

struct RegularityReport {
  SampledField u;
  double norm_low = 0.0;   // ||u|| in (s_low + m, p)
  double norm_high = 0.0;  // ||u|| in (s_high + m, p)
  double ratio = 0.0;
  double tail_fraction = 0.0;  // share of |u^|^2 on the outer quarter of frequencies
  double sigma_min = 0.0;
};

RegularityReport regularity_probe(const Symbol& a, const Grid& g, const SpaceSpec& low, const SpaceSpec& high,
                                  const SampledField& phi, const IndexOptions& o = {});

struct PerturbationCurve {
  SpaceSpec spec;
  std::vector<double> radii;
  std::vector<double> sigma_min;
  double radius = 0.0;   // first r with sigma_min <= drop * sigma_min(0), interpolated; +inf if none
  double neumann = 0.0;  // sigma_min(a) / ||H||
};

PerturbationCurve perturbation_probe(const Symbol& a, const Symbol& h, const Grid& g, const SpaceSpec& spec,
                                     const std::vector<double>& radii, double drop = 0.1);

}  // namespace pdolab
