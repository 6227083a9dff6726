#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pdolab {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Periodic box [-L, L]^n sampled with N points per axis.
// Frequencies are stored in FFT order: index i maps to k = i (i < N/2) or i - N.
struct Grid {
  int n = 1;
  double L = 1.0;
  int N = 16;

  static Grid make(int n, double L, int N);

  double h() const { return 2.0 * L / N; }
  double dxi() const;
  std::size_t size() const;
  double xi_max() const;  // largest |xi| along one axis

  static int wave_number(int i, int N) { return i < N / 2 ? i : i - N; }
  double x_axis(int i) const { return -L + h() * i; }
  double xi_axis(int i) const;

  Vec2 x(std::size_t idx) const;
  Vec2 xi(std::size_t idx) const;
  double xi_norm(std::size_t idx) const;
  double x_norm(std::size_t idx) const;

  bool operator==(const Grid& o) const { return n == o.n && L == o.L && N == o.N; }
};

// Component-major storage: values[c * grid.size() + point].
struct SampledField {
  Grid grid;
  int comps = 1;
  std::vector<cplx> values;

  SampledField() = default;
  SampledField(const Grid& g, int c = 1) : grid(g), comps(c), values(g.size() * c) {}

  cplx* comp(int c) { return values.data() + c * grid.size(); }
  const cplx* comp(int c) const { return values.data() + c * grid.size(); }
  std::size_t size() const { return grid.size(); }
  void check_finite() const;
};

double bracket(double v);
double bracket(const Vec2& v, int n);

// Unnormalized in-place transforms on one N^n block (FFTW backed).
// sign = -1 forward, +1 backward.
void fft_block(const Grid& g, cplx* data, int sign);

SampledField fourier(const SampledField& u);
SampledField inverse_fourier(const SampledField& uh);

// Smoothed step: 1 on r <= 1, 0 on r >= 2, C^inf in between.
double smoothed_step(double r);
// Excision profile: 0 on r <= 1, 1 on r >= 2.
inline double excision(double r) { return 1.0 - smoothed_step(r); }

class DyadicPartition {
 public:
  DyadicPartition() = default;
  explicit DyadicPartition(int j_max) : j_max_(j_max) {}
  static DyadicPartition for_grid(const Grid& g);

  int j_max() const { return j_max_; }
  double phi0(double r) const { return smoothed_step(r); }
  double operator()(int j, double r) const;
  double partial_sum(int J, double r) const;

 private:
  int j_max_ = 0;
};

double dyadic_eval(int j, double xi_abs);

SampledField bessel_multiplier(const SampledField& u, double s);

struct FdStencil {
  int half;
  double coef[7];  // offsets -half..half
  double denom;
};
// 4th-order centered stencil for derivative order 0..4; divide by denom * h^order.
const FdStencil& fd_stencil(int order);

// Periodic 4th-order centered finite difference of order 0..4 along one axis.
void fd_derivative(const Grid& g, const cplx* f, int axis, int order, cplx* out);
// Spectral derivative along an axis: multiplier (i xi_axis)^order.
void spectral_derivative(const Grid& g, const cplx* f, int axis, int order, cplx* out);

}  // namespace pdolab
