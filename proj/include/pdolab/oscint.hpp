#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdolab/lattice.hpp"

namespace pdolab {

// One-dimensional amplitudes a(y, eta).
struct Amplitude {
  std::string id;
  std::function<cplx(double y, double eta)> f;
  double m = 0.0;    // eta-order
  double tau = 0.0;  // y-order
  int N = -1;        // eta-derivative budget, -1 = unbounded
  int M = -1;        // y-derivative budget, -1 = unbounded
};

// sup |d_eta^a d_y^b a| (1+|eta|)^{-m} (1+|y|)^{-tau} over a sample box, a, b <= order.
double growth_constant(const Amplitude& a, int order, double radius = 8.0, int samples = 65);

using Cutoff = std::function<double(double y, double eta)>;
Cutoff gaussian_cutoff();

// Trapezoidal box [-Y, Y] x [-H, H] with K points per axis and dy * deta = 2 pi / K.
struct PhaseBox {
  double Y = 8.0;
  int K = 64;
  double H() const;
  double dy() const { return 2.0 * Y / K; }
  double deta() const;
  double y(int j) const { return -Y + dy() * j; }
  double eta(int k) const { return -H() + deta() * k; }
  static PhaseBox covering(double Y, double H, int k_min = 64);
};

// sum_{j,k} e^{-i y_j eta_k} b[j*K + k] dy deta / (2 pi).
cplx phase_sum(const PhaseBox& box, const std::vector<cplx>& b);

struct CutoffResult {
  cplx value = 0.0;
  std::vector<double> eps;
  std::vector<cplx> raw;
  std::vector<int> box_K;
  double error_estimate = 0.0;
  bool converged = false;
};

std::vector<double> default_eps_sequence();

CutoffResult osc_cutoff(const Amplitude& a, const Cutoff& chi = gaussian_cutoff(),
                        const std::vector<double>& eps = default_eps_sequence(), int order = 3,
                        double tol = 1e-6);

struct RegularizerOrder {
  int l = 2;   // y-direction
  int lp = 2;  // eta-direction
};

struct PartsResult {
  cplx value = 0.0;
  double radius = 0.0;
  int K = 0;
  double change = 0.0;  // last doubling change
};

PartsResult osc_parts(const Amplitude& a, const RegularizerOrder& ord);

// A^m(D_x, xi) exactly as defined, applied spectrally to periodic samples with spacing dx.
std::vector<cplx> apply_regularizer(int m, double xi, const std::vector<cplx>& f, double dx);

}  // namespace pdolab
