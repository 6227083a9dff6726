#include "pdolab/fredholm.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace pdolab {

namespace {

std::vector<double> weights(const Grid& g, int l, const SpaceSpec& spec) {
  std::vector<double> w(g.size() * l);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double v = space_weight(spec, g.xi_norm(k), g.n);
    for (int c = 0; c < l; ++c) w[c * g.size() + k] = v;
  }
  return w;
}

SampledField coefficients_to_field(const Grid& g, int l, const Eigen::VectorXcd& coef) {
  SampledField fh(g, l);
  for (std::size_t i = 0; i < fh.values.size(); ++i) fh.values[i] = coef(static_cast<Eigen::Index>(i));
  return inverse_fourier(fh);
}

double interior_share(const SampledField& u, double radius) {
  double in = 0, tot = 0;
  for (int c = 0; c < u.comps; ++c)
    for (std::size_t i = 0; i < u.size(); ++i) {
      double v = std::norm(u.comp(c)[i]);
      tot += v;
      if (u.grid.x_norm(i) <= radius) in += v;
    }
  return tot > 0 ? in / tot : 0.0;
}

double min_sv(const Eigen::VectorXd& s) { return s.size() ? s(s.size() - 1) : 0.0; }

}  // namespace

const Eigen::VectorXd& OperatorMatrix::singular_values() const {
  if (!sv_) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    sv_ = svd.singularValues();
  }
  return *sv_;
}

OperatorMatrix assemble(const Symbol& a, const Grid& g, const SpaceSpec& spec) {
  const int l = a.meta.l;
  const std::size_t n = g.size();
  if (n * l > kMaxAssembly)
    throw Error("assemble: l * N^n = " + std::to_string(n * l) + " exceeds " + std::to_string(kMaxAssembly));
  OperatorMatrix om;
  om.symbol_id = a.id;
  om.grid = g;
  om.l = l;
  om.m = a.meta.m;
  om.spec = spec;
  om.w_out = weights(g, l, spec);
  SpaceSpec src = spec;
  src.s = spec.s + a.meta.m;
  om.w_in = weights(g, l, src);
  const Eigen::Index dim = static_cast<Eigen::Index>(n * l);
  om.M.resize(dim, dim);
  const double norm = std::pow(2.0 * g.L, -g.n);
  SampledField sl(g, l * l), col(g, l);
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 xi = g.xi(k);
    a.slice_into(g, xi, sl.values.data());
    // op(a) applied to the lattice exponential e^{i x xi_k}.
    for (int d = 0; d < l; ++d) {
      for (int c = 0; c < l; ++c)
        for (std::size_t i = 0; i < n; ++i) {
          Vec2 x = g.x(i);
          col.comp(c)[i] = std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]) * sl.comp(c * l + d)[i];
        }
      SampledField ch = fourier(col);
      Eigen::Index jc = static_cast<Eigen::Index>(d * n + k);
      for (int c = 0; c < l; ++c)
        for (std::size_t j = 0; j < n; ++j) {
          Eigen::Index r = static_cast<Eigen::Index>(c * n + j);
          om.M(r, jc) = ch.comp(c)[j] * norm * om.w_out[r] / om.w_in[jc];
        }
    }
  }
  return om;
}

OperatorMatrix compose(const OperatorMatrix& A, const OperatorMatrix& B) {
  if (!(A.grid == B.grid) || A.l != B.l) throw Error("compose: incompatible operators");
  if (std::abs(B.spec.s - (A.spec.s + A.m)) > 1e-12 || B.spec.p != A.spec.p)
    throw Error("compose: B must map into the source space of A");
  OperatorMatrix om;
  om.symbol_id = A.symbol_id + "*" + B.symbol_id;
  om.grid = A.grid;
  om.l = A.l;
  om.m = A.m + B.m;
  om.spec = A.spec;
  om.w_out = A.w_out;
  om.w_in = B.w_in;
  om.M = A.M * B.M;
  return om;
}

SampledField source_field(const OperatorMatrix& M, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd c = v;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) /= M.w_in[i];
  return coefficients_to_field(M.grid, M.l, c);
}

SampledField dual_field(const OperatorMatrix& M, const Eigen::VectorXcd& y) {
  Eigen::VectorXcd c = y;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= M.w_out[i];
  return coefficients_to_field(M.grid, M.l, c);
}

IndexReport numerical_index(const OperatorMatrix& M, const IndexOptions& o) {
  IndexReport rep;
  rep.symbol_id = M.symbol_id;
  rep.spec = M.spec;
  rep.proxy = M.spec.p != 2.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M.M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::Index n = s.size();
  rep.sigma_max = n ? s(0) : 0.0;
  rep.sigma_min = min_sv(s);
  if (rep.sigma_max == 0.0) {
    rep.flagged = true;
    return rep;
  }
  rep.threshold = o.tol * rep.sigma_max;
  Eigen::Index retained = 0;
  while (retained < n && s(retained) >= rep.threshold) ++retained;
  rep.small = static_cast<int>(n - retained);
  if (rep.small == 0) {
    rep.gap = rep.sigma_min / rep.threshold;
  } else if (retained == 0) {
    rep.gap = 0.0;
  } else {
    rep.gap = s(retained - 1) / std::max(s(retained), std::numeric_limits<double>::min());
  }
  rep.flagged = rep.gap < o.gap_gate;
  // A square discretization pairs every near-kernel vector with a near-cokernel vector; only the
  // member localized away from the periodic wrap is counted.
  const double radius = o.interior * M.grid.L;
  for (Eigen::Index i = retained; i < n; ++i) {
    SampledField kv = source_field(M, svd.matrixV().col(i));
    if (interior_share(kv, radius) >= o.interior_mass) {
      ++rep.kernel_dim;
      rep.kernel.push_back(kv);
    }
    if (interior_share(dual_field(M, svd.matrixU().col(i)), radius) >= o.interior_mass) ++rep.cokernel_dim;
  }
  rep.index = rep.kernel_dim - rep.cokernel_dim;
  return rep;
}

WindingResult winding_index(const Symbol& a, const Grid& g, double R, double C0, double Rb, int samples_per_side) {
  if (g.n != 1 || a.meta.l != 1) throw Error("winding_index: needs a scalar 1D symbol");
  if (!a.point) throw Error("winding_index: symbol " + a.id + " has no closed-form evaluator");
  auto gate = is_elliptic(a, g, R, C0);
  if (!gate.elliptic) throw Error("winding_index: ellipticity gate fails for " + a.id);
  if (Rb <= 0) Rb = 0.9 * std::min(g.L, g.xi_max());
  if (Rb < R) throw Error("winding_index: boundary square lies inside the non-elliptic region");
  const double corners[5][2] = {{Rb, -Rb}, {Rb, Rb}, {-Rb, Rb}, {-Rb, -Rb}, {Rb, -Rb}};
  double total = 0;
  cplx prev = a.at({corners[0][0], 0}, {corners[0][1], 0});
  for (int side = 0; side < 4; ++side) {
    for (int q = 1; q <= samples_per_side; ++q) {
      double t = static_cast<double>(q) / samples_per_side;
      double x = corners[side][0] + t * (corners[side + 1][0] - corners[side][0]);
      double xi = corners[side][1] + t * (corners[side + 1][1] - corners[side][1]);
      cplx cur = a.at({x, 0}, {xi, 0});
      if (cur == 0.0 || prev == 0.0) throw Error("winding_index: symbol vanishes on the boundary");
      double d = std::arg(cur / prev);
      if (std::abs(d) > M_PI / 2) throw Error("winding_index: phase step too large, raise the sampling");
      total += d;
      prev = cur;
    }
  }
  WindingResult w;
  w.raw = total / (2 * M_PI);
  w.winding = static_cast<int>(std::lround(w.raw));
  w.half_width = Rb;
  if (std::abs(w.raw - w.winding) >= 0.1) throw Error("winding_index: accumulated phase is not near an integer");
  return w;
}

bool spec_admissible(const SymbolMeta& meta, const SpaceSpec& spec, int n) {
  if (meta.smooth_x) return true;
  double reg = meta.mtilde + meta.tau;
  double lo = (1 - meta.rho) * n / spec.p - (1 - meta.delta) * reg;
  return spec.s > lo && spec.s < reg;
}

SweepResult invariance_sweep(const Symbol& a, const Grid& g, const std::vector<SpaceSpec>& specs,
                             const IndexOptions& o) {
  SweepResult res;
  for (const auto& sp : specs) {
    if (!spec_admissible(a.meta, sp, g.n))
      throw Error("invariance_sweep: spec s = " + std::to_string(sp.s) + " outside the admissible window");
    res.rows.push_back(numerical_index(assemble(a, g, sp), o));
  }
  bool first = true;
  res.invariant = false;
  for (const auto& r : res.rows) {
    if (r.flagged) continue;
    if (first) {
      res.index = r.index;
      res.invariant = true;
      first = false;
    } else if (r.index != res.index) {
      res.invariant = false;
    }
  }
  return res;
}

RegularityReport regularity_probe(const Symbol& a, const Grid& g, const SpaceSpec& low, const SpaceSpec& high,
                                  const SampledField& phi, const IndexOptions& o) {
  if (phi.comps != a.meta.l || !(phi.grid == g)) throw Error("regularity_probe: datum shape mismatch");
  OperatorMatrix M = assemble(a, g, low);
  const auto& s = M.singular_values();
  RegularityReport rep;
  rep.sigma_min = min_sv(s);
  if (!(rep.sigma_min > o.tol * s(0) * o.gap_gate))
    throw Error("regularity_probe: operator is not invertible at the low spec");
  SampledField ph = fourier(phi);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(ph.values.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = ph.values[i] * M.w_out[i];
  Eigen::VectorXcd v = M.M.partialPivLu().solve(y);
  rep.u = source_field(M, v);
  SpaceSpec lo = low, hi = high;
  lo.s += a.meta.m;
  hi.s += a.meta.m;
  lo.l = hi.l = a.meta.l;
  rep.norm_low = besov_lp_norm(rep.u, lo).value;
  rep.norm_high = besov_lp_norm(rep.u, hi).value;
  rep.ratio = rep.norm_low > 0 ? rep.norm_high / rep.norm_low : 0.0;
  SampledField uh = fourier(rep.u);
  double tail = 0, tot = 0;
  for (int c = 0; c < uh.comps; ++c)
    for (std::size_t i = 0; i < uh.size(); ++i) {
      double e = std::norm(uh.comp(c)[i]);
      tot += e;
      if (g.xi_norm(i) > 0.75 * g.xi_max()) tail += e;
    }
  rep.tail_fraction = tot > 0 ? tail / tot : 0.0;
  return rep;
}

PerturbationCurve perturbation_probe(const Symbol& a, const Symbol& h, const Grid& g, const SpaceSpec& spec,
                                     const std::vector<double>& radii, double drop) {
  PerturbationCurve pc;
  pc.spec = spec;
  const double s0 = min_sv(assemble(a, g, spec).singular_values());
  if (!(s0 > 0)) throw Error("perturbation_probe: base operator is singular at this spec");
  Symbol hh = h;
  hh.meta.m = a.meta.m;
  double hn = assemble(hh, g, spec).singular_values()(0);
  pc.neumann = hn > 0 ? s0 / hn : std::numeric_limits<double>::infinity();
  pc.radius = std::numeric_limits<double>::infinity();
  double prev_r = 0, prev_s = s0;
  for (double r : radii) {
    Symbol ar = sum(a, h, r);
    ar.meta.m = a.meta.m;
    double sm = min_sv(assemble(ar, g, spec).singular_values());
    pc.radii.push_back(r);
    pc.sigma_min.push_back(sm);
    double target = drop * s0;
    if (std::isinf(pc.radius) && sm <= target) {
      pc.radius = prev_s == sm ? r : prev_r + (r - prev_r) * (prev_s - target) / (prev_s - sm);
    }
    prev_r = r;
    prev_s = sm;
  }
  return pc;
}

}  // namespace pdolab
