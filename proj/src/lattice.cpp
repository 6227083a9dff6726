#include "pdolab/lattice.hpp"

#include <cmath>
#include <string>

namespace pdolab {

Grid Grid::make(int n, double L, int N) {
  if (n != 1 && n != 2) throw Error("grid: dimension must be 1 or 2");
  if (!(L > 0.0) || !std::isfinite(L)) throw Error("grid: L must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw Error("grid: N must be a power of two >= 16");
  return Grid{n, L, N};
}

double Grid::dxi() const { return M_PI / L; }

std::size_t Grid::size() const {
  return n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * N;
}

double Grid::xi_max() const { return dxi() * (N / 2); }

double Grid::xi_axis(int i) const { return dxi() * wave_number(i, N); }

Vec2 Grid::x(std::size_t idx) const {
  if (n == 1) return {x_axis(static_cast<int>(idx)), 0.0};
  return {x_axis(static_cast<int>(idx / N)), x_axis(static_cast<int>(idx % N))};
}

Vec2 Grid::xi(std::size_t idx) const {
  if (n == 1) return {xi_axis(static_cast<int>(idx)), 0.0};
  return {xi_axis(static_cast<int>(idx / N)), xi_axis(static_cast<int>(idx % N))};
}

double Grid::xi_norm(std::size_t idx) const {
  Vec2 v = xi(idx);
  return std::hypot(v[0], v[1]);
}

double Grid::x_norm(std::size_t idx) const {
  Vec2 v = x(idx);
  return std::hypot(v[0], v[1]);
}

void SampledField::check_finite() const {
  if (values.size() != grid.size() * static_cast<std::size_t>(comps))
    throw Error("field: length does not match grid");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("field: non-finite entry");
}

double bracket(double v) { return std::sqrt(1.0 + v * v); }

double bracket(const Vec2& v, int n) {
  double r2 = v[0] * v[0] + (n == 2 ? v[1] * v[1] : 0.0);
  return std::sqrt(1.0 + r2);
}

namespace {

// (-1)^k phase from shifting the box origin to -L.
double parity(const Grid& g, std::size_t idx) {
  int k0, k1 = 0;
  if (g.n == 1) {
    k0 = Grid::wave_number(static_cast<int>(idx), g.N);
  } else {
    k0 = Grid::wave_number(static_cast<int>(idx / g.N), g.N);
    k1 = Grid::wave_number(static_cast<int>(idx % g.N), g.N);
  }
  return ((k0 + k1) & 1) ? -1.0 : 1.0;
}

}  // namespace

SampledField fourier(const SampledField& u) {
  SampledField out = u;
  const Grid& g = u.grid;
  double w = std::pow(g.h(), g.n);
  for (int c = 0; c < u.comps; ++c) {
    cplx* d = out.comp(c);
    fft_block(g, d, -1);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] *= w * parity(g, i);
  }
  return out;
}

SampledField inverse_fourier(const SampledField& uh) {
  SampledField out = uh;
  const Grid& g = uh.grid;
  double w = std::pow(1.0 / (2.0 * g.L), g.n);
  for (int c = 0; c < uh.comps; ++c) {
    cplx* d = out.comp(c);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] *= parity(g, i);
    fft_block(g, d, +1);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] *= w;
  }
  return out;
}

double smoothed_step(double r) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double a = std::exp(-1.0 / (2.0 - r));
  double b = std::exp(-1.0 / (r - 1.0));
  return a / (a + b);
}

DyadicPartition DyadicPartition::for_grid(const Grid& g) {
  double rmax = g.xi_max() * (g.n == 2 ? std::sqrt(2.0) : 1.0);
  int j = 0;
  while (std::ldexp(1.0, j) < rmax) ++j;
  return DyadicPartition(j);
}

double DyadicPartition::operator()(int j, double r) const { return dyadic_eval(j, r); }

double DyadicPartition::partial_sum(int J, double r) const {
  double s = 0.0;
  for (int j = 0; j <= J; ++j) s += dyadic_eval(j, r);
  return s;
}

// The plain recursion phi0(2^-j xi) - phi0(2^-j-1 xi) is non-positive; the
// annulus-supported form below is the one satisfying 0 <= phi_j <= 1.
double dyadic_eval(int j, double xi_abs) {
  if (j < 0) throw Error("dyadic_eval: negative block index");
  double r = std::abs(xi_abs);
  if (j == 0) return smoothed_step(r);
  return smoothed_step(std::ldexp(r, -j)) - smoothed_step(std::ldexp(r, -(j - 1)));
}

SampledField bessel_multiplier(const SampledField& u, double s) {
  if (s == 0.0) return u;
  SampledField uh = fourier(u);
  const Grid& g = u.grid;
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::pow(bracket(g.xi(i), g.n), s);
  for (int c = 0; c < u.comps; ++c) {
    cplx* d = uh.comp(c);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] *= w[i];
  }
  return inverse_fourier(uh);
}

namespace {

const FdStencil kStencils[5] = {
    {0, {1, 0, 0, 0, 0, 0, 0}, 1.0},
    {2, {1, -8, 0, 8, -1, 0, 0}, 12.0},
    {2, {-1, 16, -30, 16, -1, 0, 0}, 12.0},
    {3, {1, -8, 13, 0, -13, 8, -1}, 8.0},
    {3, {-1, 12, -39, 56, -39, 12, -1}, 6.0},
};

}  // namespace

const FdStencil& fd_stencil(int order) {
  if (order < 0 || order > 4) throw Error("fd_stencil: order must be in 0..4");
  return kStencils[order];
}

void fd_derivative(const Grid& g, const cplx* f, int axis, int order, cplx* out) {
  if (order < 0 || order > 4) throw Error("fd_derivative: order must be in 0..4");
  if (axis < 0 || axis >= g.n) throw Error("fd_derivative: bad axis");
  const FdStencil& st = kStencils[order];
  const int N = g.N;
  const double scale = 1.0 / (st.denom * std::pow(g.h(), order));
  std::size_t total = g.size();
  std::size_t stride = (g.n == 2 && axis == 0) ? static_cast<std::size_t>(N) : 1;
  for (std::size_t idx = 0; idx < total; ++idx) {
    int pos = (g.n == 1) ? static_cast<int>(idx)
                         : (axis == 0 ? static_cast<int>(idx / N) : static_cast<int>(idx % N));
    std::size_t base = idx - static_cast<std::size_t>(pos) * stride;
    cplx acc = 0.0;
    for (int o = -st.half; o <= st.half; ++o) {
      double c = st.coef[o + st.half];
      if (c == 0.0) continue;
      int q = ((pos + o) % N + N) % N;
      acc += c * f[base + static_cast<std::size_t>(q) * stride];
    }
    out[idx] = acc * scale;
  }
}

void spectral_derivative(const Grid& g, const cplx* f, int axis, int order, cplx* out) {
  std::vector<cplx> buf(f, f + g.size());
  fft_block(g, buf.data(), -1);
  const int N = g.N;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    int i = (g.n == 1) ? static_cast<int>(idx)
                       : (axis == 0 ? static_cast<int>(idx / N) : static_cast<int>(idx % N));
    int k = Grid::wave_number(i, N);
    // The Nyquist mode has no symmetric partner; drop it for odd orders.
    if ((order & 1) && 2 * std::abs(k) == N) {
      buf[idx] = 0.0;
      continue;
    }
    buf[idx] *= std::pow(cplx(0.0, g.dxi() * k), order);
  }
  fft_block(g, buf.data(), +1);
  double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = buf[i] * inv;
}

}  // namespace pdolab
