#include <algorithm>
#include <cmath>

#include "pdolab/calculus.hpp"

namespace pdolab {

namespace {

// Integral of exp(-1/(1-|x|^2)) over the unit ball, n = 1 and n = 2.
constexpr double kBumpMass1 = 0.4439938161680793;
constexpr double kBumpMass2 = 0.46651239317833;

double base_kernel(MollifierFamily::Kind kind, double r2, int n) {
  if (kind == MollifierFamily::Kind::Gaussian) return std::pow(M_PI, -0.5 * n) * std::exp(-r2);
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2)) / (n == 1 ? kBumpMass1 : kBumpMass2);
}

// Periodic representative of a lattice coordinate, nearest to 0.
double wrap(double x, double L) {
  double p = 2.0 * L;
  x = std::fmod(x + L, p);
  if (x < 0) x += p;
  return x - L;
}

void check_eps(double e) {
  if (!(e > 0)) throw Error("mollifier: epsilon must be positive");
}

}  // namespace

MollifierFamily MollifierFamily::gaussian(std::vector<double> eps) {
  MollifierFamily f;
  f.kind = Kind::Gaussian;
  f.eps = std::move(eps);
  return f;
}

MollifierFamily MollifierFamily::bump(std::vector<double> eps) {
  MollifierFamily f;
  f.kind = Kind::Bump;
  f.eps = std::move(eps);
  return f;
}

std::vector<double> MollifierFamily::dyadic_eps(int q_first, int q_last) {
  std::vector<double> e;
  for (int q = q_first; q <= q_last; ++q) e.push_back(std::ldexp(1.0, -q));
  return e;
}

std::vector<double> MollifierFamily::kernel(const Grid& g, double e) const {
  check_eps(e);
  std::vector<double> k(g.size());
  const double scale = std::pow(e, -g.n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec2 x = g.x(i);
    double r2 = 0.0;
    // Sum over the nearest periodic images; the Gaussian tail beyond them is below roundoff for e <= L.
    for (int s0 = -1; s0 <= 1; ++s0) {
      double y0 = wrap(x[0], g.L) + 2.0 * g.L * s0;
      if (g.n == 1) {
        r2 = y0 * y0 / (e * e);
        k[i] += scale * base_kernel(kind, r2, 1);
        continue;
      }
      for (int s1 = -1; s1 <= 1; ++s1) {
        double y1 = wrap(x[1], g.L) + 2.0 * g.L * s1;
        r2 = (y0 * y0 + y1 * y1) / (e * e);
        k[i] += scale * base_kernel(kind, r2, 2);
      }
    }
  }
  return k;
}

double MollifierFamily::mass(const Grid& g, double e) const {
  auto k = kernel(g, e);
  double s = 0.0;
  for (double v : k) s += v;
  return s * std::pow(g.h(), g.n);
}

std::vector<double> MollifierFamily::multiplier(const Grid& g, double e) const {
  check_eps(e);
  std::vector<double> w(g.size());
  if (kind == Kind::Gaussian) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      Vec2 xi = g.xi(i);
      w[i] = std::exp(-0.25 * e * e * (xi[0] * xi[0] + xi[1] * xi[1]));
    }
    return w;
  }
  // Lattice transform of the sampled kernel, normalized so that constants are preserved.
  auto k = kernel(g, e);
  SampledField f(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = k[i];
  SampledField fh = fourier(f);
  double m0 = fh.values[0].real();
  if (!(m0 > 0)) throw Error("mollifier: bump kernel not resolved at epsilon = " + std::to_string(e));
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = fh.values[i].real() / m0;
  return w;
}

Symbol mollify(const Symbol& a, const MollifierFamily& fam, double e) {
  check_eps(e);
  SymbolMeta meta = a.meta;
  meta.smooth_x = true;
  SliceEval base = a.slicer;
  int comps = a.comps();
  SliceEval f = [base, fam, e, comps](const Grid& g, const Vec2& xi, cplx* out) {
    base(g, xi, out);
    auto w = fam.multiplier(g, e);
    std::size_t n = g.size();
    const double inv = 1.0 / static_cast<double>(n);
    // Convolution theorem directly on the raw blocks; the (-1)^k phases of the lattice transform cancel.
    for (int c = 0; c < comps; ++c) {
      cplx* blk = out + c * n;
      fft_block(g, blk, -1);
      for (std::size_t i = 0; i < n; ++i) blk[i] *= w[i] * inv;
      fft_block(g, blk, +1);
    }
  };
  return Symbol::from_slice(a.id + "_moll", meta, f, a.limit);
}

double ConvergenceReport::final_ratio() const {
  if (value.empty() || value.front() == 0.0) return 0.0;
  return value.back() / value.front();
}

ConvergenceReport mollify_convergence(const Symbol& a, const Grid& g, const MollifierFamily& fam, int k, double t,
                                      const SeminormOptions& o) {
  const auto& mt = a.meta;
  if (!(t < mt.tau)) throw Error("mollify_convergence: need t < tau");
  if (mt.delta != 0.0 && !unif_predicate(a, g, {0, 0}, 0.05, o).passes)
    throw Error("mollify_convergence: symbol fails the uniform-continuity diagnostic");
  ConvergenceReport rep;
  const double floor = 1e-10 * std::max(1.0, nonsmooth_seminorm(a, g, 0, mt.mtilde, t, o).value);
  for (double e : fam.eps) {
    Symbol d = sum(mollify(a, fam, e), a, -1.0);
    d.meta.smooth_x = false;
    rep.eps.push_back(e);
    rep.value.push_back(nonsmooth_seminorm(d, g, k, mt.mtilde, t, o).value);
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.value.size(); ++i) {
    if (i && !(rep.value[i] < rep.value[i - 1]) && !(rep.value[i] <= floor && rep.value[i - 1] <= floor))
      rep.monotone = false;
    if (rep.value[i] > floor) {
      lx.push_back(std::log(rep.eps[i]));
      ly.push_back(std::log(rep.value[i]));
    }
  }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    rep.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  rep.flagged = !rep.monotone;
  return rep;
}

}  // namespace pdolab
