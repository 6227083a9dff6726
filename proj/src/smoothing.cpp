#include <algorithm>
#include <cmath>

#include "pdolab/calculus.hpp"

namespace pdolab {

namespace {

double xi_abs(const Vec2& xi, int n) { return n == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]); }

// out <- sum_j psi_j(|xi|) phi0(eps_j |D_x|) base, with base left in scratch.
void sharp_slice(const SliceEval& base, double gamma, int comps, const Grid& g, const Vec2& xi, cplx* out,
                 std::vector<cplx>& scratch) {
  const std::size_t n = g.size();
  scratch.resize(n * comps);
  base(g, xi, scratch.data());
  std::fill(out, out + n * comps, cplx(0.0));
  const double r = xi_abs(xi, g.n);
  std::vector<cplx> blk(n);
  for (int j = 0;; ++j) {
    if (j > 0 && std::ldexp(1.0, j - 1) >= r) break;
    double w = dyadic_eval(j, r);
    if (w == 0.0) continue;
    double e = std::pow(2.0, -j * gamma);
    for (int c = 0; c < comps; ++c) {
      std::copy(scratch.begin() + c * n, scratch.begin() + (c + 1) * n, blk.begin());
      fft_block(g, blk.data(), -1);
      for (std::size_t i = 0; i < n; ++i) {
        Vec2 eta = g.xi(i);
        blk[i] *= smoothed_step(e * xi_abs(eta, g.n)) / static_cast<double>(n);
      }
      fft_block(g, blk.data(), +1);
      for (std::size_t i = 0; i < n; ++i) out[c * n + i] += w * blk[i];
    }
  }
}

}  // namespace

SmoothingSplit symbol_smoothing(const Symbol& a, double gamma) {
  const auto& mt = a.meta;
  if (!(gamma > mt.delta && gamma < mt.rho))
    throw Error("symbol_smoothing: gamma must lie strictly between delta and rho");
  SmoothingSplit s;
  s.gamma = gamma;
  SliceEval base = a.slicer;
  int comps = a.comps();

  SymbolMeta sharp_meta = mt;
  sharp_meta.smooth_x = true;
  sharp_meta.delta = gamma;
  s.sharp = Symbol::from_slice(a.id + "_sharp", sharp_meta,
                               [base, gamma, comps](const Grid& g, const Vec2& xi, cplx* out) {
                                 std::vector<cplx> scratch;
                                 sharp_slice(base, gamma, comps, g, xi, out, scratch);
                               });

  SymbolMeta flat_meta = mt;
  flat_meta.m = mt.m - (gamma - mt.delta) * (mt.mtilde + mt.tau);
  flat_meta.delta = gamma;
  s.flat = Symbol::from_slice(a.id + "_flat", flat_meta,
                              [base, gamma, comps](const Grid& g, const Vec2& xi, cplx* out) {
                                std::vector<cplx> scratch;
                                sharp_slice(base, gamma, comps, g, xi, out, scratch);
                                for (std::size_t i = 0; i < scratch.size(); ++i) out[i] = scratch[i] - out[i];
                              });
  return s;
}

DecayFit fit_decay_exponent(const Symbol& a, const Grid& g, double lo, double hi) {
  DecayFit f;
  SampledField sl(g, a.comps());
  for (int i = 1; i < g.N / 2; ++i) {
    double x = g.xi_axis(i);
    if (x < lo || x > hi) continue;
    a.slice_into(g, {x, 0.0}, sl.values.data());
    double s = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) s = std::max(s, point_norm(sl.values.data() + p, sl.comps, g.size()));
    f.xi.push_back(x);
    f.sup.push_back(s);
  }
  double mx = 0, my = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < f.xi.size(); ++i) {
    if (!(f.sup[i] > 0)) continue;
    mx += std::log(bracket(f.xi[i]));
    my += std::log(f.sup[i]);
    ++cnt;
  }
  if (cnt < 2) throw Error("fit_decay_exponent: fewer than two non-zero samples in range");
  mx /= cnt;
  my /= cnt;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < f.xi.size(); ++i) {
    if (!(f.sup[i] > 0)) continue;
    double lx = std::log(bracket(f.xi[i])) - mx, ly = std::log(f.sup[i]) - my;
    sxy += lx * ly;
    sxx += lx * lx;
  }
  f.exponent = sxy / sxx;
  return f;
}

double smoothing_target_exponent(const SymbolMeta& meta, double gamma) {
  double gd = gamma - meta.delta;
  return meta.m - gd * (meta.mtilde + meta.tau) + 0.05 * gd * meta.tau;
}

}  // namespace pdolab
