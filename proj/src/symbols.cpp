#include "pdolab/symbols.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pdolab {

Symbol Symbol::from_point(std::string id, SymbolMeta meta, PointEval f, LimitEval lim) {
  Symbol s;
  s.id = std::move(id);
  s.meta = meta;
  s.point = f;
  s.limit = std::move(lim);
  int comps = meta.l * meta.l;
  s.slicer = [f, comps](const Grid& g, const Vec2& xi, cplx* out) {
    std::vector<cplx> tmp(comps);
    std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
      f(g.x(i), xi, tmp.data());
      for (int c = 0; c < comps; ++c) out[c * n + i] = tmp[c];
    }
  };
  return s;
}

Symbol Symbol::from_slice(std::string id, SymbolMeta meta, SliceEval f, LimitEval lim) {
  Symbol s;
  s.id = std::move(id);
  s.meta = meta;
  s.slicer = std::move(f);
  s.limit = std::move(lim);
  return s;
}

SampledField Symbol::slice(const Grid& g, const Vec2& xi) const {
  SampledField out(g, comps());
  slicer(g, xi, out.values.data());
  return out;
}

void Symbol::slice_into(const Grid& g, const Vec2& xi, cplx* out) const { slicer(g, xi, out); }

cplx Symbol::at(const Vec2& x, const Vec2& xi) const {
  if (!point) throw Error("symbol " + id + ": no closed-form evaluator");
  std::vector<cplx> tmp(comps());
  point(x, xi, tmp.data());
  return tmp[0];
}

Symbol scaled(const Symbol& a, cplx c) {
  Symbol s = a;
  SliceEval base = a.slicer;
  int comps = a.comps();
  s.slicer = [base, c, comps](const Grid& g, const Vec2& xi, cplx* out) {
    base(g, xi, out);
    for (std::size_t i = 0; i < g.size() * comps; ++i) out[i] *= c;
  };
  if (a.point) {
    PointEval p = a.point;
    s.point = [p, c, comps](const Vec2& x, const Vec2& xi, cplx* out) {
      p(x, xi, out);
      for (int i = 0; i < comps; ++i) out[i] *= c;
    };
  }
  if (a.limit) {
    LimitEval lim = a.limit;
    s.limit = [lim, c, comps](const Vec2& xi, cplx* out) {
      lim(xi, out);
      for (int i = 0; i < comps; ++i) out[i] *= c;
    };
  }
  return s;
}

Symbol sum(const Symbol& a, const Symbol& b, cplx cb) {
  if (a.meta.l != b.meta.l) throw Error("symbol sum: matrix sizes differ");
  Symbol s;
  s.id = a.id + "+" + b.id;
  s.meta = a.meta;
  s.meta.m = std::max(a.meta.m, b.meta.m);
  s.meta.smooth_x = a.meta.smooth_x && b.meta.smooth_x;
  s.meta.x_periodic = a.meta.x_periodic && b.meta.x_periodic;
  s.meta.mtilde = std::min(a.meta.mtilde, b.meta.mtilde);
  s.meta.tau = std::min(a.meta.tau, b.meta.tau);
  s.meta.delta = std::max(a.meta.delta, b.meta.delta);
  s.meta.rho = std::min(a.meta.rho, b.meta.rho);
  if (a.meta.M < 0) s.meta.M = b.meta.M;
  else if (b.meta.M >= 0) s.meta.M = std::min(a.meta.M, b.meta.M);
  int comps = a.comps();
  SliceEval sa = a.slicer, sb = b.slicer;
  s.slicer = [sa, sb, cb, comps](const Grid& g, const Vec2& xi, cplx* out) {
    std::vector<cplx> tmp(g.size() * comps);
    sa(g, xi, out);
    sb(g, xi, tmp.data());
    for (std::size_t i = 0; i < tmp.size(); ++i) out[i] += cb * tmp[i];
  };
  if (a.point && b.point) {
    PointEval pa = a.point, pb = b.point;
    s.point = [pa, pb, cb, comps](const Vec2& x, const Vec2& xi, cplx* out) {
      std::vector<cplx> tmp(comps);
      pa(x, xi, out);
      pb(x, xi, tmp.data());
      for (int i = 0; i < comps; ++i) out[i] += cb * tmp[i];
    };
  }
  if (a.limit && b.limit) {
    LimitEval la = a.limit, lb = b.limit;
    s.limit = [la, lb, cb, comps](const Vec2& xi, cplx* out) {
      std::vector<cplx> tmp(comps);
      la(xi, out);
      lb(xi, tmp.data());
      for (int i = 0; i < comps; ++i) out[i] += cb * tmp[i];
    };
  }
  return s;
}

Symbol component(const Symbol& a, int row, int col) {
  int l = a.meta.l;
  if (row < 0 || col < 0 || row >= l || col >= l) throw Error("symbol component: index out of range");
  SymbolMeta meta = a.meta;
  meta.l = 1;
  int c = row * l + col, comps = a.comps();
  SliceEval base = a.slicer;
  Symbol s = Symbol::from_slice(a.id + "[" + std::to_string(row) + "," + std::to_string(col) + "]", meta,
                                [base, c, comps](const Grid& g, const Vec2& xi, cplx* out) {
                                  std::vector<cplx> tmp(g.size() * comps);
                                  base(g, xi, tmp.data());
                                  std::copy(tmp.begin() + c * g.size(), tmp.begin() + (c + 1) * g.size(), out);
                                });
  if (a.point) {
    PointEval p = a.point;
    s.point = [p, c, comps](const Vec2& x, const Vec2& xi, cplx* out) {
      std::vector<cplx> tmp(comps);
      p(x, xi, tmp.data());
      out[0] = tmp[c];
    };
  }
  if (a.limit) {
    LimitEval lim = a.limit;
    s.limit = [lim, c, comps](const Vec2& xi, cplx* out) {
      std::vector<cplx> tmp(comps);
      lim(xi, tmp.data());
      out[0] = tmp[c];
    };
  }
  return s;
}

std::vector<Vec2> xi_samples(const Grid& g, int max_per_axis) {
  std::set<int> ks;
  if (max_per_axis <= 0 || g.N <= max_per_axis) {
    for (int i = 0; i < g.N; ++i) ks.insert(Grid::wave_number(i, g.N));
  } else {
    int lo = -g.N / 2, hi = g.N / 2 - 1;
    for (int q = 0; q < max_per_axis; ++q)
      ks.insert(lo + static_cast<int>(std::lround(static_cast<double>(q) * (hi - lo) / (max_per_axis - 1))));
    ks.insert(0);
  }
  std::vector<Vec2> out;
  for (int k0 : ks) {
    if (g.n == 1) {
      out.push_back({k0 * g.dxi(), 0.0});
    } else {
      for (int k1 : ks) out.push_back({k0 * g.dxi(), k1 * g.dxi()});
    }
  }
  return out;
}

Mask interior_mask(const Grid& g, const SymbolMeta& meta, int reach) {
  if (meta.x_periodic) return {};
  Mask m(g.size(), 1);
  auto near_wrap = [&](int i) { return i < reach || i >= g.N - reach; };
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    int i0 = g.n == 1 ? static_cast<int>(idx) : static_cast<int>(idx / g.N);
    int i1 = g.n == 1 ? reach : static_cast<int>(idx % g.N);
    if (near_wrap(i0) || near_wrap(i1)) m[idx] = 0;
  }
  return m;
}

namespace {

void check_alpha(const Grid& g, const MultiIndex& alpha) {
  if (alpha[0] < 0 || alpha[1] < 0 || alpha[0] > 4 || alpha[1] > 4)
    throw Error("xi derivative order must be in 0..4 per axis");
  if (g.n == 1 && alpha[1] != 0) throw Error("xi derivative: second axis used on a 1D grid");
}

void check_budget(const Symbol& a, int k) {
  if (a.meta.M >= 0 && k > a.meta.M)
    throw Error("symbol " + a.id + ": derivative level " + std::to_string(k) + " exceeds budget M = " +
                std::to_string(a.meta.M));
  if (k > 4) throw Error("derivative level above 4 is not supported by the difference stencils");
}

template <class Eval>
void tensor_stencil(const MultiIndex& alpha, double hxi, std::size_t len, const Vec2& xi, Eval eval,
                    cplx* out) {
  const FdStencil& s0 = fd_stencil(alpha[0]);
  const FdStencil& s1 = fd_stencil(alpha[1]);
  double scale = 1.0 / (s0.denom * s1.denom * std::pow(hxi, alpha[0] + alpha[1]));
  std::fill(out, out + len, cplx(0.0));
  std::vector<cplx> tmp(len);
  for (int o0 = -s0.half; o0 <= s0.half; ++o0) {
    double c0 = s0.coef[o0 + s0.half];
    if (c0 == 0.0) continue;
    for (int o1 = -s1.half; o1 <= s1.half; ++o1) {
      double c1 = s1.coef[o1 + s1.half];
      if (c1 == 0.0) continue;
      eval(Vec2{xi[0] + o0 * hxi, xi[1] + o1 * hxi}, tmp.data());
      double c = c0 * c1 * scale;
      for (std::size_t i = 0; i < len; ++i) out[i] += c * tmp[i];
    }
  }
}

double weight(const Vec2& xi, int n, double e) { return std::pow(bracket(xi, n), e); }

}  // namespace

SampledField xi_derivative(const Symbol& a, const Grid& g, const Vec2& xi, const MultiIndex& alpha,
                           double hxi) {
  check_alpha(g, alpha);
  if (alpha[0] == 0 && alpha[1] == 0) return a.slice(g, xi);
  SampledField out(g, a.comps());
  tensor_stencil(alpha, hxi, out.values.size(), xi,
                 [&](const Vec2& z, cplx* dst) { a.slice_into(g, z, dst); }, out.values.data());
  return out;
}

std::vector<cplx> limit_xi_derivative(const Symbol& a, const Vec2& xi, const MultiIndex& alpha, double hxi) {
  if (!a.limit) throw Error("symbol " + a.id + ": no limit symbol");
  std::vector<cplx> out(a.comps());
  tensor_stencil(alpha, hxi, out.size(), xi, [&](const Vec2& z, cplx* dst) { a.limit(z, dst); }, out.data());
  return out;
}

SeminormReport smooth_seminorm(const Symbol& a, const Grid& g, int k, const SeminormOptions& o) {
  check_budget(a, k);
  const auto& mt = a.meta;
  Mask mask = interior_mask(g, mt);
  SeminormReport rep;
  rep.k = k;
  auto alphas = multi_indices(g.n, k, false);
  auto betas = multi_indices(g.n, k, false);
  std::vector<double> best(alphas.size() * betas.size(), 0.0);
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
      SampledField d = xi_derivative(a, g, xi, alphas[ia], o.hxi);
      for (std::size_t ib = 0; ib < betas.size(); ++ib) {
        const auto& be = betas[ib];
        double e = -(mt.m - mt.rho * order_of(alphas[ia]) + mt.delta * order_of(be));
        double v = sup_norm(order_of(be) ? derivative(d, be) : d, &mask) * weight(xi, g.n, e);
        double& b = best[ia * betas.size() + ib];
        b = std::max(b, v);
      }
    }
  }
  for (std::size_t ia = 0; ia < alphas.size(); ++ia)
    for (std::size_t ib = 0; ib < betas.size(); ++ib) {
      double v = best[ia * betas.size() + ib];
      rep.entries.push_back({alphas[ia], betas[ib], v, false});
      rep.value = std::max(rep.value, v);
    }
  return rep;
}

SeminormReport nonsmooth_seminorm(const Symbol& a, const Grid& g, int k, int mtilde, double s,
                                  const SeminormOptions& o) {
  check_budget(a, k);
  const auto& mt = a.meta;
  Mask mask = interior_mask(g, mt);
  bool se = mt.delta != 0.0;
  SeminormReport rep;
  rep.k = k;
  rep.se_present = se;
  HoelderSpec hs{mtilde, s, o.window, o.exhaustive};
  auto alphas = multi_indices(g.n, k, false);
  std::vector<double> best(alphas.size(), 0.0);
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
      int al = order_of(alphas[ia]);
      SampledField d = xi_derivative(a, g, xi, alphas[ia], o.hxi);
      double v = hoelder_norm(d, hs, &mask) * weight(xi, g.n, -mt.m + mt.rho * al - mt.delta * (mtilde + s));
      if (se) v += sup_norm(d, &mask) * weight(xi, g.n, -mt.m + mt.rho * al);
      best[ia] = std::max(best[ia], v);
    }
  }
  for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
    rep.entries.push_back({alphas[ia], {0, 0}, best[ia], se});
    rep.value = std::max(rep.value, best[ia]);
  }
  return rep;
}

namespace {

double abs_det(const cplx* v, int l, std::size_t stride) {
  if (l == 1) return std::abs(v[0]);
  if (l == 2) return std::abs(v[0] * v[3 * stride] - v[stride] * v[2 * stride]);
  Eigen::MatrixXcd m(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = v[(i * l + j) * stride];
  return std::abs(m.determinant());
}

}  // namespace

EllipticReport is_elliptic(const Symbol& a, const Grid& g, double R, double C0) {
  EllipticReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  rep.margin_by_xi.assign(g.size(), std::numeric_limits<double>::infinity());
  const int l = a.meta.l;
  const std::size_t n = g.size();
  SampledField sl(g, a.comps());
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 xi = g.xi(k);
    double xin = g.xi_norm(k);
    a.slice_into(g, xi, sl.values.data());
    double w = weight(xi, g.n, -a.meta.m * l);
    for (std::size_t i = 0; i < n; ++i) {
      if (g.x_norm(i) + xin < R) continue;
      ++rep.checked;
      double v = abs_det(sl.values.data() + i, l, n) * w;
      rep.margin_by_xi[k] = std::min(rep.margin_by_xi[k], v);
      if (v < rep.margin) {
        rep.margin = v;
        rep.witness_x = g.x(i);
        rep.witness_xi = xi;
      }
    }
  }
  // Relative slack absorbs roundoff in det * <xi>^{-ml} when the bound is attained exactly.
  rep.elliptic = rep.checked == 0 || rep.margin >= C0 * (1.0 - 1e-12);
  return rep;
}

Profile radial_profile(const Grid& g, const std::vector<double>& v, double tail_fraction, double tail_ratio) {
  double rmax = 0;
  for (std::size_t i = 0; i < g.size(); ++i) rmax = std::max(rmax, g.x_norm(i));
  int nb = static_cast<int>(std::floor(rmax / g.h())) + 1;
  std::vector<double> val(nb, -1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    int b = std::min(nb - 1, static_cast<int>(std::floor(g.x_norm(i) / g.h() + 1e-9)));
    val[b] = std::max(val[b], v[i]);
  }
  Profile p;
  double cut = (1.0 - tail_fraction) * rmax;
  for (int b = 0; b < nb; ++b) {
    if (val[b] < 0) continue;
    double r = b * g.h();
    p.r.push_back(r);
    p.value.push_back(val[b]);
    p.global_max = std::max(p.global_max, val[b]);
    if (r >= cut) p.tail_max = std::max(p.tail_max, val[b]);
  }
  p.decays = p.global_max == 0.0 || p.tail_max < tail_ratio * p.global_max;
  return p;
}

Profile slowly_varying_profile(const Symbol& a, const Grid& g, const MultiIndex& alpha, const MultiIndex& beta,
                               const SeminormOptions& o) {
  check_budget(a, order_of(alpha));
  if (!a.meta.smooth_x && order_of(beta) > a.meta.mtilde)
    throw Error("slowly varying profile: |beta| exceeds the x-regularity order");
  const auto& mt = a.meta;
  Mask mask = interior_mask(g, mt);
  std::vector<double> best(g.size(), 0.0);
  double e = -(mt.m - mt.rho * order_of(alpha) + mt.delta * order_of(beta));
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    SampledField d = xi_derivative(a, g, xi, alpha, o.hxi);
    if (order_of(beta)) d = derivative(d, beta);
    double w = weight(xi, g.n, e);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!mask.empty() && !mask[i]) continue;
      best[i] = std::max(best[i], point_norm(d.values.data() + i, d.comps, g.size()) * w);
    }
  }
  return radial_profile(g, best);
}

double unif_modulus(const Symbol& a, const Grid& g, const MultiIndex& alpha, const MultiIndex& shift,
                    const SeminormOptions& o) {
  check_budget(a, order_of(alpha));
  const auto& mt = a.meta;
  const int N = g.N;
  int s0 = shift[0], s1 = g.n == 2 ? shift[1] : 0;
  if (s0 == 0 && s1 == 0) return 0.0;
  std::vector<std::size_t> src, dst;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    int i0 = g.n == 1 ? static_cast<int>(idx) : static_cast<int>(idx / N);
    int i1 = g.n == 1 ? 0 : static_cast<int>(idx % N);
    int j0 = i0 + s0, j1 = i1 + s1;
    if (!mt.x_periodic && (j0 < 0 || j0 >= N || j1 < 0 || j1 >= N)) continue;
    j0 = ((j0 % N) + N) % N;
    j1 = ((j1 % N) + N) % N;
    src.push_back(idx);
    dst.push_back(g.n == 1 ? static_cast<std::size_t>(j0) : static_cast<std::size_t>(j0) * N + j1);
  }
  double best = 0.0;
  std::vector<cplx> diff(a.comps());
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    SampledField d = xi_derivative(a, g, xi, alpha, o.hxi);
    double w = weight(xi, g.n, -mt.m + mt.rho * order_of(alpha));
    for (std::size_t q = 0; q < src.size(); ++q) {
      for (int c = 0; c < d.comps; ++c) diff[c] = d.comp(c)[dst[q]] - d.comp(c)[src[q]];
      best = std::max(best, point_norm(diff.data(), d.comps, 1) * w);
    }
  }
  return best;
}

UnifReport unif_predicate(const Symbol& a, const Grid& g, const MultiIndex& alpha, double ratio,
                          const SeminormOptions& o) {
  UnifReport rep;
  for (int s = g.N / 4; s >= 1; s /= 2) {
    rep.h.push_back(s * g.h());
    rep.modulus.push_back(unif_modulus(a, g, alpha, {s, 0}, o));
  }
  double first = rep.modulus.front(), last = rep.modulus.back();
  rep.passes = first == 0.0 || last < ratio * first;
  return rep;
}

Profile limit_decay_profile(const Symbol& a, const Grid& g, const MultiIndex& alpha, const SeminormOptions& o) {
  if (!a.limit) throw Error("symbol " + a.id + ": limit decay needs a(infinity, xi)");
  check_budget(a, order_of(alpha));
  const auto& mt = a.meta;
  std::vector<double> best(g.size(), 0.0);
  std::vector<cplx> diff(a.comps());
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    SampledField d = xi_derivative(a, g, xi, alpha, o.hxi);
    std::vector<cplx> lim = limit_xi_derivative(a, xi, alpha, o.hxi);
    double w = weight(xi, g.n, -mt.m + mt.rho * order_of(alpha));
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (int c = 0; c < d.comps; ++c) diff[c] = d.comp(c)[i] - lim[c];
      best[i] = std::max(best[i], point_norm(diff.data(), d.comps, 1) * w);
    }
  }
  return radial_profile(g, best);
}

CbRatio cb_ratio(const Symbol& a, const Grid& g, const MultiIndex& alpha, int k,
                          const SeminormOptions& o) {
  check_budget(a, order_of(alpha));
  const auto& mt = a.meta;
  Mask mask = interior_mask(g, mt);
  CbRatio r;
  int al = order_of(alpha);
  for (const Vec2& xi : xi_samples(g, o.max_xi_per_axis)) {
    double c = cb_norm(xi_derivative(a, g, xi, alpha, o.hxi), k, &mask);
    r.with_mtilde = std::max(r.with_mtilde, c * weight(xi, g.n, -(mt.mtilde - mt.rho * al + mt.delta * k)));
    r.with_order = std::max(r.with_order, c * weight(xi, g.n, -(mt.m - mt.rho * al + mt.delta * k)));
  }
  return r;
}

}  // namespace pdolab
