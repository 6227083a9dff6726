#pragma once

#include <array>
#include <string>
#include <vector>

#include "pdolab/lattice.hpp"

namespace pdolab {

using MultiIndex = std::array<int, 2>;
// Optional point mask restricting sups and Hoelder pairs; empty means the whole lattice.
using Mask = std::vector<char>;

struct HoelderSpec {
  int mtilde = 0;
  double tau = 0.5;
  double window = 0.0;     // <= 0 selects min(1, 64 h)
  bool exhaustive = false; // all lattice pairs (periodic distance)
};

struct SpaceSpec {
  double s = 0.0;
  double p = 2.0;
  int q = 2;
  int l = 1;
};

struct NormResult {
  double value = 0.0;
  bool proxy = false;
  double multiplier_route = 0.0;  // only for p = 2
  double lp_route = 0.0;
};

std::vector<MultiIndex> multi_indices(int n, int order, bool exact_order);
int order_of(const MultiIndex& a);

// Pointwise norm of a (possibly matrix-valued) sample; comps = l*l uses the spectral norm.
double point_norm(const cplx* v, int comps, std::size_t stride);

SampledField derivative(const SampledField& f, const MultiIndex& alpha);
double sup_norm(const SampledField& f, const Mask* mask = nullptr);
double default_window(const Grid& g);
double hoelder_quotient(const SampledField& f, double tau, double window, bool exhaustive,
                        const Mask* mask = nullptr);
double cb_norm(const SampledField& f, int k, const Mask* mask = nullptr);
double top_order_sup(const SampledField& f, int k, const Mask* mask = nullptr);
double hoelder_norm(const SampledField& f, const HoelderSpec& spec, const Mask* mask = nullptr);

Mask exterior_mask(const Grid& g, double R);

NormResult besov_lp_norm(const SampledField& f, const SpaceSpec& spec);

// Frequency weight of the spec: <xi>^s for p = 2, LP-block proxy otherwise.
double space_weight(const SpaceSpec& spec, double xi_abs, int n);

double translate_diff_ratio(const SampledField& f, const MultiIndex& shift, int mtilde, double t,
                            double tau, bool exhaustive = false);

struct InterpolationParams {
  int mtilde = 2;
  double tau = 0.5;
  int k = 1;
  double s = 0.3;
  double R = 1.0;
};

struct RatioEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct InterpolationReport {
  bool skipped = false;
  std::vector<RatioEntry> entries;
  double max_ratio() const;
  const RatioEntry* find(const std::string& name) const;
};

InterpolationReport interpolation_suite(const SampledField& f, const InterpolationParams& p);

RatioEntry product_ratio(const SampledField& f, const SampledField& g, int mtilde, double tau);

}  // namespace pdolab
