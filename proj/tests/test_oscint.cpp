#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdolab/oscint.hpp"

using namespace pdolab;

namespace {

Amplitude gaussian_pair() {
  Amplitude a;
  a.id = "gaussian_pair";
  a.f = [](double y, double eta) { return cplx(std::exp(-y * y - eta * eta)); };
  return a;
}

Amplitude eta_only() {
  Amplitude a;
  a.id = "eta_only";
  a.f = [](double, double eta) { return std::exp(-eta * eta) * cplx(1.0 + 0.5 * eta, 0.25 * eta * eta); };
  a.m = 0;
  a.tau = 0;
  return a;
}

// Plain nested-loop trapezoid on [-R, R]^2, no tied grids or tables.
cplx direct_quadrature(const Amplitude& a, double R, int K) {
  double h = 2 * R / K;
  cplx s = 0.0;
  for (int i = 0; i < K; ++i) {
    double y = -R + h * i;
    for (int j = 0; j < K; ++j) {
      double eta = -R + h * j;
      s += std::polar(1.0, -y * eta) * a.f(y, eta);
    }
  }
  return s * h * h / (2 * M_PI);
}

}  // namespace

TEST_CASE("phase sum reproduces a closed-form transform") {
  // The y-integral gives sqrt(2 pi) e^{-eta^2/2}; the remaining eta-integral gives 1/sqrt(2).
  PhaseBox box = PhaseBox::covering(10, 10);
  std::vector<cplx> b(static_cast<std::size_t>(box.K) * box.K);
  for (int j = 0; j < box.K; ++j)
    for (int k = 0; k < box.K; ++k) b[j * box.K + k] = std::exp(-0.5 * (box.y(j) * box.y(j) + box.eta(k) * box.eta(k)));
  CHECK(std::abs(phase_sum(box, b) - cplx(std::sqrt(0.5))) < 1e-13);
  CHECK(box.dy() * box.deta() == doctest::Approx(2 * M_PI / box.K));
}

TEST_CASE("zero amplitude") {
  Amplitude z;
  z.f = [](double, double) { return cplx(0.0); };
  auto r = osc_cutoff(z);
  CHECK(r.value == cplx(0.0));
  CHECK(osc_parts(z, {2, 2}).value == cplx(0.0));
}

TEST_CASE("Gaussian pair: cutoff route against dense quadrature and closed form") {
  auto a = gaussian_pair();
  cplx oracle = direct_quadrature(a, 9.0, 600);
  CHECK(std::abs(oracle - 1.0 / std::sqrt(5.0)) < 1e-10);
  auto r = osc_cutoff(a);
  CHECK(r.converged);
  CHECK(std::abs(r.value - oracle) <= 1e-6 * std::abs(oracle));
  auto p = osc_parts(a, {2, 2});
  CHECK(std::abs(p.value - r.value) <= 1e-5 * (1 + std::abs(r.value)));
}

TEST_CASE("eta-only amplitude reduces to evaluation at zero") {
  auto a = eta_only();
  auto r = osc_cutoff(a);
  CHECK(std::abs(r.value - 1.0) <= 1e-6);
  auto p = osc_parts(a, {2, 2});
  CHECK(std::abs(p.value - 1.0) <= 1e-6);
}

TEST_CASE("parts route is independent of the admissible orders") {
  for (auto a : {gaussian_pair(), eta_only()}) {
    cplx v22 = osc_parts(a, {2, 2}).value;
    for (RegularizerOrder o : {RegularizerOrder{4, 4}, RegularizerOrder{3, 3}, RegularizerOrder{2, 5}}) {
      cplx v = osc_parts(a, o).value;
      CHECK(std::abs(v - v22) <= 1e-6 * (1 + std::abs(v22)));
    }
  }
}

TEST_CASE("regularizer reproduces the phase") {
  const int K = 64;
  const double L = M_PI, dx = 2 * L / K;
  for (double xi : {0.0, 3.0, -5.0}) {
    std::vector<cplx> e(K);
    for (int j = 0; j < K; ++j) e[j] = std::polar(1.0, -(-L + dx * j) * xi);
    for (int m = 1; m <= 4; ++m) {
      auto r = apply_regularizer(m, xi, e, dx);
      for (int j = 0; j < K; ++j) CHECK(std::abs(r[j] - e[j]) < 1e-9);  // roundoff scaled by <kappa_max>^m
    }
  }
}

TEST_CASE("argument validation") {
  auto a = gaussian_pair();
  CHECK_THROWS_AS(osc_cutoff(a, [](double, double) { return 0.5; }), Error);
  CHECK_THROWS_AS(osc_cutoff(a, gaussian_cutoff(), {0.1, 0.2, 0.05, 0.01}), Error);
  CHECK_THROWS_AS(osc_cutoff(a, gaussian_cutoff(), {0.1, 0.05}), Error);
  Amplitude g = a;
  g.m = 1.5;
  CHECK_THROWS_AS(osc_parts(g, {2, 2}), Error);
  g.m = 0;
  g.M = 1;
  CHECK_THROWS_AS(osc_parts(g, {2, 2}), Error);
}

TEST_CASE("dominated convergence along a y-cutoff sequence") {
  auto base = eta_only();
  double prev = 1e300;
  for (double j : {1.0, 2.0, 4.0, 8.0}) {
    Amplitude aj = base;
    aj.f = [base, j](double y, double eta) { return base.f(y, eta) * smoothed_step(y / j); };
    double err = std::abs(osc_parts(aj, {2, 2}).value - 1.0);
    MESSAGE("j=" << j << " |osc(a_j) - osc(a)| = " << err);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("declared growth") {
  CHECK(growth_constant(gaussian_pair(), 2) < 10.0);
  CHECK(growth_constant(eta_only(), 2) < 10.0);
}
