#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pdolab/lattice.hpp"

using namespace pdolab;

namespace {

// Direct O(N^2) trapezoidal transform, independent of the FFT path.
std::vector<cplx> direct_transform_1d(const Grid& g, const std::vector<cplx>& u) {
  std::vector<cplx> out(g.N);
  for (int k = 0; k < g.N; ++k) {
    double xi = g.xi_axis(k);
    cplx acc = 0.0;
    for (int j = 0; j < g.N; ++j) acc += std::polar(1.0, -g.x_axis(j) * xi) * u[j];
    out[k] = acc * g.h();
  }
  return out;
}

SampledField random_bandlimited(const Grid& g, int kmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SampledField uh(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec2 xi = g.xi(i);
    if (std::abs(xi[0]) <= kmax * g.dxi() && std::abs(xi[1]) <= kmax * g.dxi())
      uh.values[i] = cplx(nd(rng), nd(rng));
  }
  return inverse_fourier(uh);
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid::make(1, 1.0, 12), Error);
  CHECK_THROWS_AS(Grid::make(1, 1.0, 8), Error);
  CHECK_THROWS_AS(Grid::make(3, 1.0, 16), Error);
  CHECK_THROWS_AS(Grid::make(1, -1.0, 16), Error);
  Grid g = Grid::make(2, 3.0, 32);
  CHECK(g.size() == 1024u);
  CHECK(g.h() == doctest::Approx(6.0 / 32));
  CHECK(g.xi_axis(16) == doctest::Approx(-M_PI / 3.0 * 16));
}

TEST_CASE("bracket") {
  CHECK(bracket(0.0) == 1.0);
  CHECK(bracket(Vec2{3.0, 4.0}, 2) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  Grid g = Grid::make(2, 4.0, 32);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double b = bracket(g.xi(i), 2);
    CHECK(b >= std::max(1.0, g.xi_norm(i)));
  }
}

TEST_CASE("fourier of zero and Gaussian") {
  Grid g = Grid::make(1, 16.0, 512);
  SampledField z(g);
  auto zh = fourier(z);
  for (auto v : zh.values) CHECK(std::abs(v) == 0.0);

  SampledField u(g);
  for (int j = 0; j < g.N; ++j) u.values[j] = std::exp(-0.5 * g.x_axis(j) * g.x_axis(j));
  auto uh = fourier(u);
  auto oracle = direct_transform_1d(g, u.values);
  for (int k = 0; k < g.N; ++k) {
    double xi = g.xi_axis(k);
    double closed = std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi);
    CHECK(std::abs(uh.values[k] - oracle[k]) <= 1e-10 * (1.0 + std::abs(oracle[k])));
    CHECK(std::abs(uh.values[k] - closed) <= 1e-8 * std::max(closed, 1e-300) + 1e-14);
  }
}

TEST_CASE("round trip and Plancherel") {
  for (int n : {1, 2}) {
    Grid g = Grid::make(n, 5.0, n == 1 ? 256 : 32);
    auto u = random_bandlimited(g, n == 1 ? 40 : 8, 7 + n);
    auto back = inverse_fourier(fourier(u));
    double err = 0, nrm = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(back.values[i] - u.values[i]));
      nrm = std::max(nrm, std::abs(u.values[i]));
    }
    CHECK(err <= 1e-12 * nrm);

    auto uh = fourier(u);
    double lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      lhs += std::norm(u.values[i]);
      rhs += std::norm(uh.values[i]);
    }
    lhs *= std::pow(g.h(), n);
    rhs *= std::pow(1.0 / (2.0 * M_PI), n) * std::pow(M_PI / g.L, n);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * lhs);
  }
}

TEST_CASE("dyadic partition") {
  CHECK(dyadic_eval(0, 0.0) == 1.0);
  DyadicPartition P(5);
  for (double r = 0; r <= 32.0; r += 0.013) CHECK(std::abs(P.partial_sum(5, r) - 1.0) <= 1e-12);
  for (int j = 0; j <= 8; ++j) {
    for (double r = 0; r <= 600; r += 0.37) {
      double v = dyadic_eval(j, r);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      if (j >= 1 && v > 0) {
        CHECK(r >= std::ldexp(1.0, j - 1));
        CHECK(r <= std::ldexp(1.0, j + 1));
      }
    }
  }
}

TEST_CASE("partition completeness on a grid") {
  Grid g = Grid::make(1, 64.0, 2048);
  auto P = DyadicPartition::for_grid(g);
  CHECK(std::ldexp(1.0, P.j_max()) >= g.xi_max());
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(P.partial_sum(P.j_max(), g.xi_norm(i)) - 1.0) <= 1e-10);
}

TEST_CASE("comparability constants are j-independent") {
  // 2^{-ja} / <xi>^{-a} on supp phi_j stays in a fixed interval.
  for (int a : {-2, -1, 1, 2}) {
    double lo = 1e300, hi = 0;
    for (int j = 1; j <= 12; ++j) {
      for (double r = std::ldexp(1.0, j - 1); r <= std::ldexp(1.0, j + 1); r += std::ldexp(1.0, j - 8)) {
        if (dyadic_eval(j, r) <= 0) continue;
        double q = std::pow(2.0, -j * a) / std::pow(bracket(r), -a);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    }
    CHECK(lo >= std::pow(2.0, -std::abs(a)) * 0.5);
    CHECK(hi <= std::pow(2.0, std::abs(a)) * 2.0);
  }
}

TEST_CASE("dyadic derivative bound recorded") {
  // sup |d/dxi phi_j| <xi> over supp phi_j; constant is measured, bounded uniformly.
  double worst = 0;
  for (int j = 1; j <= 10; ++j) {
    double c = 0;
    double step = std::ldexp(1.0, j - 12);
    for (double r = std::ldexp(1.0, j - 1); r <= std::ldexp(1.0, j + 1); r += step) {
      double d = (dyadic_eval(j, r + step * 1e-3) - dyadic_eval(j, r - step * 1e-3)) / (2e-3 * step);
      c = std::max(c, std::abs(d) * bracket(r));
    }
    worst = std::max(worst, c);
    MESSAGE("j=" << j << " sup|phi_j'|<xi> = " << c);
  }
  CHECK(worst < 10.0);
}

TEST_CASE("bessel multiplier") {
  Grid g = Grid::make(1, 6.0, 128);
  auto u = random_bandlimited(g, 30, 3);
  auto same = bessel_multiplier(u, 0.0);
  CHECK(same.values == u.values);
  for (double s : {-2.0, 1.0, 3.0}) {
    auto back = bessel_multiplier(bessel_multiplier(u, s), -s);
    double err = 0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(back.values[i] - u.values[i]));
    CHECK(err <= 1e-10);
  }
  // Single lattice mode is scaled by <xi0>^s.
  int k0 = 9;
  double xi0 = k0 * g.dxi();
  SampledField e(g);
  for (int j = 0; j < g.N; ++j) e.values[j] = std::polar(1.0, g.x_axis(j) * xi0);
  auto be = bessel_multiplier(e, 1.5);
  double f = std::pow(bracket(xi0), 1.5);
  for (int j = 0; j < g.N; ++j) CHECK(std::abs(be.values[j] - f * e.values[j]) <= 1e-12 * f);
}

TEST_CASE("finite differences and spectral derivative") {
  Grid g = Grid::make(1, M_PI, 256);
  std::vector<cplx> f(g.N), d(g.N), s(g.N);
  for (int j = 0; j < g.N; ++j) f[j] = std::sin(3 * g.x_axis(j));
  for (int order = 1; order <= 4; ++order) {
    fd_derivative(g, f.data(), 0, order, d.data());
    spectral_derivative(g, f.data(), 0, order, s.data());
    for (int j = 0; j < g.N; ++j) {
      double x = g.x_axis(j);
      double exact = std::pow(3.0, order) * std::sin(3 * x + order * M_PI / 2);
      CHECK(std::abs(d[j] - exact) <= 1e-4 * std::pow(3.0, order));
      // Roundoff in the top modes grows like (N/2)^order.
      CHECK(std::abs(s[j] - exact) <= 1e-15 * std::pow(g.N / 2.0, order) + 1e-12);
    }
  }
}
