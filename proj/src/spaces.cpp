#include "pdolab/spaces.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pdolab {

std::vector<MultiIndex> multi_indices(int n, int order, bool exact_order) {
  std::vector<MultiIndex> out;
  for (int a0 = 0; a0 <= order; ++a0) {
    for (int a1 = 0; a1 <= (n == 2 ? order : 0); ++a1) {
      int o = a0 + a1;
      if (o > order) continue;
      if (exact_order && o != order) continue;
      out.push_back({a0, a1});
    }
  }
  return out;
}

int order_of(const MultiIndex& a) { return a[0] + a[1]; }

double point_norm(const cplx* v, int comps, std::size_t stride) {
  if (comps == 1) return std::abs(v[0]);
  int l = static_cast<int>(std::lround(std::sqrt(static_cast<double>(comps))));
  if (l * l != comps) {
    double s = 0;
    for (int c = 0; c < comps; ++c) s += std::norm(v[c * stride]);
    return std::sqrt(s);
  }
  Eigen::MatrixXcd m(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = v[(i * l + j) * stride];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

SampledField derivative(const SampledField& f, const MultiIndex& alpha) {
  SampledField out = f;
  std::vector<cplx> tmp(f.size());
  for (int axis = 0; axis < f.grid.n; ++axis) {
    int o = alpha[axis];
    while (o > 0) {
      int step = std::min(o, 4);
      for (int c = 0; c < f.comps; ++c) {
        fd_derivative(f.grid, out.comp(c), axis, step, tmp.data());
        std::copy(tmp.begin(), tmp.end(), out.comp(c));
      }
      o -= step;
    }
  }
  return out;
}

double sup_norm(const SampledField& f, const Mask* mask) {
  double s = 0;
  std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (mask && !mask->empty() && !(*mask)[i]) continue;
    s = std::max(s, point_norm(f.values.data() + i, f.comps, n));
  }
  return s;
}

double default_window(const Grid& g) { return std::min(1.0, 64.0 * g.h()); }

namespace {

double diff_norm(const SampledField& f, std::size_t i, std::size_t j) {
  std::size_t n = f.size();
  if (f.comps == 1) return std::abs(f.values[i] - f.values[j]);
  std::vector<cplx> d(f.comps);
  for (int c = 0; c < f.comps; ++c) d[c] = f.values[c * n + i] - f.values[c * n + j];
  return point_norm(d.data(), f.comps, 1);
}

}  // namespace

double hoelder_quotient(const SampledField& f, double tau, double window, bool exhaustive,
                        const Mask* mask) {
  const Grid& g = f.grid;
  const int N = g.N;
  const double h = g.h();
  if (window <= 0) window = default_window(g);
  if (!exhaustive && window < h * (1 - 1e-12)) throw Error("hoelder: window below grid spacing");
  int reach = exhaustive ? N / 2 : std::min(N / 2, static_cast<int>(std::floor(window / h + 1e-9)));
  bool use_mask = mask && !mask->empty();

  // Offsets from one half-space so each unordered pair is visited once.
  std::vector<std::array<int, 2>> offs;
  if (g.n == 1) {
    for (int d = 1; d <= reach; ++d) offs.push_back({d, 0});
  } else {
    for (int d0 = 0; d0 <= reach; ++d0)
      for (int d1 = -reach; d1 <= reach; ++d1) {
        if (d0 == 0 && d1 <= 0) continue;
        if (d0 == N / 2 && d1 < 0) continue;
        if (d1 == -N / 2 && reach == N / 2) continue;
        double dist = h * std::hypot(d0, d1);
        if (!exhaustive && dist > window * (1 + 1e-12)) continue;
        offs.push_back({d0, d1});
      }
  }

  double q = 0;
  for (const auto& o : offs) {
    double dist = h * std::hypot(o[0], o[1]);
    double inv = 1.0 / std::pow(dist, tau);
    if (g.n == 1) {
      for (int i = 0; i < N; ++i) {
        int j = (i + o[0]) % N;
        if (use_mask && (!(*mask)[i] || !(*mask)[j])) continue;
        q = std::max(q, diff_norm(f, i, j) * inv);
      }
    } else {
      for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1) {
          std::size_t a = static_cast<std::size_t>(i0) * N + i1;
          std::size_t b = static_cast<std::size_t>((i0 + o[0] + N) % N) * N + (i1 + o[1] + N) % N;
          if (use_mask && (!(*mask)[a] || !(*mask)[b])) continue;
          q = std::max(q, diff_norm(f, a, b) * inv);
        }
    }
  }
  return q;
}

double cb_norm(const SampledField& f, int k, const Mask* mask) {
  double s = 0;
  for (const auto& a : multi_indices(f.grid.n, k, false)) s = std::max(s, sup_norm(derivative(f, a), mask));
  return s;
}

double top_order_sup(const SampledField& f, int k, const Mask* mask) {
  double s = 0;
  for (const auto& a : multi_indices(f.grid.n, k, true)) s = std::max(s, sup_norm(derivative(f, a), mask));
  return s;
}

double hoelder_norm(const SampledField& f, const HoelderSpec& spec, const Mask* mask) {
  if (!(spec.tau > 0.0 && spec.tau < 1.0)) throw Error("hoelder: tau must lie in (0,1)");
  if (spec.mtilde < 0) throw Error("hoelder: negative order");
  // Four-point stencils per derivative need the box to hold several of them.
  if (f.grid.N < 8 * (spec.mtilde + 1)) throw Error("hoelder: grid too coarse for requested order");
  double sup = 0, quo = 0;
  for (const auto& a : multi_indices(f.grid.n, spec.mtilde, false)) {
    SampledField d = derivative(f, a);
    sup = std::max(sup, sup_norm(d, mask));
    quo = std::max(quo, hoelder_quotient(d, spec.tau, spec.window, spec.exhaustive, mask));
  }
  return sup + quo;
}

Mask exterior_mask(const Grid& g, double R) {
  Mask m(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) m[i] = g.x_norm(i) >= R ? 1 : 0;
  return m;
}

double space_weight(const SpaceSpec& spec, double xi_abs, int n) {
  if (spec.p == 2.0) return std::pow(bracket(xi_abs), spec.s);
  // LP-block proxy: block j carries 2^{j(s + n(1/2 - 1/p))}.
  double e = spec.s + n * (0.5 - 1.0 / spec.p);
  double w = 0;
  for (int j = 0;; ++j) {
    if (j >= 1 && std::ldexp(1.0, j - 1) > xi_abs) break;
    double ph = dyadic_eval(j, xi_abs);
    if (ph > 0) w += std::pow(2.0, j * e) * ph;
  }
  return w;
}

NormResult besov_lp_norm(const SampledField& f, const SpaceSpec& spec) {
  if (spec.p < 1.0) throw Error("besov: p must be >= 1");
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  const double vol = std::pow(g.h(), g.n);
  SampledField fh = fourier(f);
  auto P = DyadicPartition::for_grid(g);

  NormResult r;
  std::vector<double> S(n, 0.0);
  for (int j = 0; j <= P.j_max(); ++j) {
    SampledField blk = fh;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      double w = dyadic_eval(j, g.xi_norm(i));
      any = any || w > 0;
      for (int c = 0; c < f.comps; ++c) blk.comp(c)[i] *= w;
    }
    if (!any) continue;
    SampledField b = inverse_fourier(blk);
    double wj = std::pow(2.0, 2.0 * j * spec.s);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < f.comps; ++c) S[i] += wj * std::norm(b.comp(c)[i]);
  }
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::sqrt(S[i]), spec.p);
  r.lp_route = std::pow(vol * acc, 1.0 / spec.p);

  if (spec.p == 2.0) {
    SampledField m = bessel_multiplier(f, spec.s);
    double e = 0;
    for (const auto& v : m.values) e += std::norm(v);
    r.multiplier_route = std::sqrt(vol * e);
    r.value = r.multiplier_route;
  } else {
    r.proxy = true;
    r.value = r.lp_route;
  }
  return r;
}

double translate_diff_ratio(const SampledField& f, const MultiIndex& shift, int mtilde, double t,
                            double tau, bool exhaustive) {
  if (!(0 < t && t < tau && tau < 1)) throw Error("translate_diff_ratio: need 0 < t < tau < 1");
  const Grid& g = f.grid;
  const int N = g.N;
  double denom_norm = hoelder_norm(f, {mtilde, tau, 0.0, exhaustive});
  if (denom_norm == 0.0) throw Error("translate_diff_ratio: zero Hoelder norm");
  if (shift[0] == 0 && shift[1] == 0) return 0.0;
  SampledField d(g, f.comps);
  for (int c = 0; c < f.comps; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t src;
      if (g.n == 1) {
        src = static_cast<std::size_t>(((static_cast<int>(i) - shift[0]) % N + N) % N);
      } else {
        int i0 = static_cast<int>(i / N), i1 = static_cast<int>(i % N);
        src = static_cast<std::size_t>(((i0 - shift[0]) % N + N) % N) * N + ((i1 - shift[1]) % N + N) % N;
      }
      d.comp(c)[i] = f.comp(c)[src] - f.comp(c)[i];
    }
  double ylen = g.h() * std::hypot(shift[0], shift[1]);
  return hoelder_norm(d, {mtilde, t, 0.0, exhaustive}) / (std::pow(ylen, tau - t) * denom_norm);
}

double InterpolationReport::max_ratio() const {
  double m = 0;
  for (const auto& e : entries) m = std::max(m, e.ratio);
  return m;
}

const RatioEntry* InterpolationReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

RatioEntry make_entry(const std::string& name, double lhs, double rhs) {
  RatioEntry e{name, lhs, rhs, 0.0};
  e.ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? INFINITY : 0.0);
  return e;
}

}  // namespace

InterpolationReport interpolation_suite(const SampledField& f, const InterpolationParams& p) {
  InterpolationReport rep;
  const Grid& g = f.grid;
  if (sup_norm(f) == 0.0) {
    rep.skipped = true;
    return rep;
  }
  if (p.k < 1 || p.k > p.mtilde) throw Error("interpolation: need 1 <= k <= mtilde");
  const int mt = p.mtilde;
  const double c0 = sup_norm(f);
  const double cmt_tau = hoelder_norm(f, {mt, p.tau, 0.0, false});

  {
    double th = p.k / (mt + p.tau);
    rep.entries.push_back(make_entry("interp_result", cb_norm(f, p.k),
                                     std::pow(c0, 1 - th) * std::pow(cmt_tau, th)));
  }

  Mask ext1 = exterior_mask(g, 1.0);
  double c0e = sup_norm(f, &ext1);
  double cmte = cb_norm(f, mt, &ext1);
  {
    double th = static_cast<double>(p.k) / mt;
    rep.entries.push_back(make_entry("interp1_i", cb_norm(f, p.k, &ext1),
                                     std::pow(c0e, 1 - th) * std::pow(cmte, th)));
  }
  if (p.k + p.s < mt + p.tau) {
    double th = (p.k + p.s) / (mt + p.tau);
    double lhs = hoelder_norm(f, {p.k, p.s, 0.0, false}, &ext1);
    double rhs = std::pow(c0e, 1 - th) * std::pow(hoelder_norm(f, {mt, p.tau, 0.0, false}, &ext1), th);
    rep.entries.push_back(make_entry("interp1_ii", lhs, rhs));
  }
  {
    double lhs = top_order_sup(f, p.k);
    double top = top_order_sup(f, p.k + 1);
    double rhs = std::pow(c0, 1.0 / (p.k + 1)) * std::pow(top, static_cast<double>(p.k) / (p.k + 1));
    rep.entries.push_back(make_entry("interp1_iii", lhs, rhs));
  }

  Mask extR = exterior_mask(g, std::max(1.0, p.R));
  double c0R = sup_norm(f, &extR);
  double cmtR = cb_norm(f, mt, &extR);
  double hR = hoelder_norm(f, {mt, p.tau, 0.0, false}, &extR);
  {
    double th = static_cast<double>(p.k) / mt;
    double lhs = 0;
    for (const auto& a : multi_indices(g.n, p.k, true)) lhs = std::max(lhs, sup_norm(derivative(f, a), &extR));
    rep.entries.push_back(make_entry("interp2", lhs, std::pow(c0R, 1 - th) * std::pow(cmtR, th)));
  }
  {
    double th1 = static_cast<double>(p.k) / mt;
    double th = (p.k + p.s) / (mt + p.tau);
    double lhs = 0;
    for (const auto& a : multi_indices(g.n, p.k, true))
      lhs = std::max(lhs, hoelder_norm(derivative(f, a), {0, p.s, 0.0, false}, &extR));
    double rhs = std::pow(c0R, 1 - th1) * std::pow(cmtR, th1) + std::pow(c0R, 1 - th) * std::pow(hR, th);
    rep.entries.push_back(make_entry("interp3", lhs, rhs));
  }
  return rep;
}

RatioEntry product_ratio(const SampledField& f, const SampledField& g, int mtilde, double tau) {
  if (!(f.grid == g.grid) || f.comps != 1 || g.comps != 1) throw Error("product_ratio: scalar fields on one grid");
  SampledField fg = f;
  for (std::size_t i = 0; i < f.size(); ++i) fg.values[i] = f.values[i] * g.values[i];
  double lhs = hoelder_norm(fg, {mtilde, tau, 0.0, false});
  double rhs = 0;
  for (int m1 = 0; m1 <= mtilde; ++m1) {
    int m2 = mtilde - m1;
    rhs += cb_norm(f, m1) * hoelder_norm(g, {m2, tau, 0.0, false}) +
           hoelder_norm(f, {m1, tau, 0.0, false}) * cb_norm(g, m2);
  }
  return make_entry("product", lhs, rhs);
}

}  // namespace pdolab
