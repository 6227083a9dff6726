#include "pdolab/oscint.hpp"

#include <algorithm>
#include <cmath>

namespace pdolab {

namespace {

int next_pow2(double v) {
  int k = 1;
  while (k < v) k *= 2;
  return k;
}

// Forward/backward spectral multiplier along one axis of a K x K row-major array
// (rows = y index, columns = eta index). mult(kappa, line) receives the dual variable
// and the index of the orthogonal line.
template <class Mult>
void apply_along(std::vector<cplx>& arr, int K, bool along_y, double spacing, Mult mult) {
  Grid g1 = Grid::make(1, 1.0, K);
  std::vector<cplx> buf(K);
  const double dk = 2.0 * M_PI / (K * spacing);
  for (int line = 0; line < K; ++line) {
    for (int q = 0; q < K; ++q) buf[q] = along_y ? arr[q * K + line] : arr[line * K + q];
    fft_block(g1, buf.data(), -1);
    for (int q = 0; q < K; ++q) buf[q] *= mult(dk * Grid::wave_number(q, K), 2 * q == K, line) / double(K);
    fft_block(g1, buf.data(), +1);
    for (int q = 0; q < K; ++q) (along_y ? arr[q * K + line] : arr[line * K + q]) = buf[q];
  }
}

// Multiplier of A^m(D, xi) with D -> kappa; transposed flips the sign of the odd D term.
cplx regularizer_multiplier(int m, double xi, double kappa, bool nyquist, bool transposed) {
  double bx = std::sqrt(1.0 + xi * xi);
  double bk = std::sqrt(1.0 + kappa * kappa);
  if (m % 2 == 0) return std::pow(bx, -m) * std::pow(bk, m);
  double d = nyquist ? 0.0 : kappa;
  double sign = transposed ? 1.0 : -1.0;
  return std::pow(bx, -m - 1) * std::pow(bk, m - 1) + sign * std::pow(bx, -m) * (xi / bx) * std::pow(bk, m - 1) * d;
}

double edge_max(const std::function<cplx(double, double)>& b, double Y, double H, bool y_edge, int samples) {
  double v = 0;
  for (int s = 0; s < samples; ++s) {
    double t = -1.0 + 2.0 * s / (samples - 1);
    if (y_edge) {
      v = std::max({v, std::abs(b(Y, t * H)), std::abs(b(-Y, t * H))});
    } else {
      v = std::max({v, std::abs(b(t * Y, H)), std::abs(b(t * Y, -H))});
    }
  }
  return v;
}

double box_max(const std::function<cplx(double, double)>& b, double Y, double H, int samples) {
  double v = 0;
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j)
      v = std::max(v, std::abs(b(-Y + 2 * Y * i / (samples - 1), -H + 2 * H * j / (samples - 1))));
  return v;
}

constexpr int kMaxK = 16384;

}  // namespace

double PhaseBox::H() const { return M_PI * K / (2.0 * Y); }
double PhaseBox::deta() const { return M_PI / Y; }

PhaseBox PhaseBox::covering(double Y, double H, int k_min) {
  PhaseBox b;
  b.Y = Y;
  b.K = next_pow2(std::max<double>(k_min, 2.0 * Y * H / M_PI));
  if (b.K < 4) b.K = 4;
  return b;
}

cplx phase_sum(const PhaseBox& box, const std::vector<cplx>& b) {
  const int K = box.K;
  if (b.size() != static_cast<std::size_t>(K) * K) throw Error("phase_sum: array size mismatch");
  // y_j eta_k = YH - pi j - pi k + 2 pi jk / K and YH = pi K / 2 is a multiple of 2 pi.
  std::vector<cplx> w(K);
  for (int q = 0; q < K; ++q) w[q] = std::polar(1.0, -2.0 * M_PI * q / K);
  cplx total = 0.0;
  for (int j = 0; j < K; ++j) {
    cplx row = 0.0;
    const cplx* bj = b.data() + static_cast<std::size_t>(j) * K;
    for (int k = 0; k < K; ++k) {
      cplx t = bj[k] * w[(static_cast<long long>(j) * k) & (K - 1)];
      row += (k & 1) ? -t : t;
    }
    total += (j & 1) ? -row : row;
  }
  return total * (box.dy() * box.deta() / (2.0 * M_PI));
}

Cutoff gaussian_cutoff() {
  return [](double y, double eta) { return std::exp(-(y * y + eta * eta)); };
}

std::vector<double> default_eps_sequence() {
  std::vector<double> e;
  for (int q = 2; q <= 7; ++q) e.push_back(std::ldexp(1.0, -q));
  return e;
}

double growth_constant(const Amplitude& a, int order, double radius, int samples) {
  const double hd = 1e-3;
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    double y = -radius + 2 * radius * i / (samples - 1);
    for (int j = 0; j < samples; ++j) {
      double eta = -radius + 2 * radius * j / (samples - 1);
      for (int p = 0; p <= order; ++p) {
        if (a.N >= 0 && p > a.N) break;
        for (int q = 0; q + p <= order; ++q) {
          if (a.M >= 0 && q > a.M) break;
          const FdStencil& se = fd_stencil(p);
          const FdStencil& sy = fd_stencil(q);
          cplx d = 0.0;
          for (int oe = -se.half; oe <= se.half; ++oe)
            for (int oy = -sy.half; oy <= sy.half; ++oy) {
              double c = se.coef[oe + se.half] * sy.coef[oy + sy.half];
              if (c != 0.0) d += c * a.f(y + oy * hd, eta + oe * hd);
            }
          d /= se.denom * sy.denom * std::pow(hd, p + q);
          best = std::max(best, std::abs(d) * std::pow(1 + std::abs(eta), -a.m) * std::pow(1 + std::abs(y), -a.tau));
        }
      }
    }
  }
  return best;
}

CutoffResult osc_cutoff(const Amplitude& a, const Cutoff& chi, const std::vector<double>& eps, int order,
                        double tol) {
  if (std::abs(chi(0.0, 0.0) - 1.0) > 1e-14) throw Error("osc_cutoff: cutoff must equal 1 at the origin");
  if (order < 1 || eps.size() < static_cast<std::size_t>(order + 1))
    throw Error("osc_cutoff: need at least order + 1 values of epsilon");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) throw Error("osc_cutoff: epsilon must be positive");
    if (i && !(eps[i] < eps[i - 1])) throw Error("osc_cutoff: epsilon sequence must decrease");
  }
  CutoffResult res;
  for (double e : eps) {
    auto b = [&](double y, double eta) { return chi(e * y, e * eta) * a.f(y, eta); };
    double Y = 4, H = 4;
    double peak = box_max(b, Y, H, 33);
    for (int it = 0; it < 40; ++it) {
      peak = std::max(peak, box_max(b, Y, H, 33));
      bool grow_y = edge_max(b, Y, H, true, 129) > 1e-15 * peak;
      bool grow_h = edge_max(b, Y, H, false, 129) > 1e-15 * peak;
      if (!grow_y && !grow_h) break;
      if (grow_y) Y *= 2;
      if (grow_h) H *= 2;
      if (2.0 * Y * H / M_PI > kMaxK) throw Error("osc_cutoff: quadrature box exceeds the size limit at eps = " + std::to_string(e));
    }
    PhaseBox box = PhaseBox::covering(Y, H);
    std::vector<cplx> arr(static_cast<std::size_t>(box.K) * box.K);
    for (int j = 0; j < box.K; ++j)
      for (int k = 0; k < box.K; ++k) arr[static_cast<std::size_t>(j) * box.K + k] = b(box.y(j), box.eta(k));
    res.eps.push_back(e);
    res.raw.push_back(phase_sum(box, arr));
    res.box_K.push_back(box.K);
  }
  // Neville extrapolation to eps = 0 in the variable t = eps^2.
  auto extrapolate = [&](int pts) {
    int n0 = static_cast<int>(res.eps.size()) - pts;
    std::vector<cplx> P(res.raw.begin() + n0, res.raw.end());
    std::vector<double> t(pts);
    for (int i = 0; i < pts; ++i) t[i] = res.eps[n0 + i] * res.eps[n0 + i];
    for (int lvl = 1; lvl < pts; ++lvl)
      for (int i = 0; i + lvl < pts; ++i) P[i] = (t[i + lvl] * P[i] - t[i] * P[i + 1]) / (t[i + lvl] - t[i]);
    return P[0];
  };
  res.value = extrapolate(order + 1);
  res.error_estimate = std::abs(res.value - extrapolate(order));
  res.converged = res.error_estimate <= tol * (1.0 + std::abs(res.value));
  return res;
}

PartsResult osc_parts(const Amplitude& a, const RegularizerOrder& ord) {
  const int n = 1;
  if (ord.l < 1 || ord.lp < 1) throw Error("osc_parts: orders must be positive");
  if (!(ord.l > n + a.m)) throw Error("osc_parts: need l > n + m");
  if (!(ord.lp > n + a.tau)) throw Error("osc_parts: need l' > n + tau");
  if (a.M >= 0 && ord.l > a.M) throw Error("osc_parts: l exceeds the y-derivative budget");
  if (a.N >= 0 && ord.lp > a.N) throw Error("osc_parts: l' exceeds the eta-derivative budget");
  PartsResult res;
  cplx prev = 0.0;
  bool have_prev = false;
  for (double R = 8; R <= 64; R *= 2) {
    PhaseBox box = PhaseBox::covering(R, R);
    const int K = box.K;
    std::vector<cplx> arr(static_cast<std::size_t>(K) * K);
    for (int j = 0; j < K; ++j)
      for (int k = 0; k < K; ++k) arr[static_cast<std::size_t>(j) * K + k] = a.f(box.y(j), box.eta(k));
    // Integration by parts moves the transposed operators onto a: y-direction first, then eta.
    apply_along(arr, K, true, box.dy(), [&](double kappa, bool nyq, int k) {
      return regularizer_multiplier(ord.l, box.eta(k), kappa, nyq, true);
    });
    apply_along(arr, K, false, box.deta(), [&](double kappa, bool nyq, int j) {
      return regularizer_multiplier(ord.lp, box.y(j), kappa, nyq, true);
    });
    cplx v = phase_sum(box, arr);
    res.value = v;
    res.radius = R;
    res.K = K;
    if (have_prev) {
      res.change = std::abs(v - prev);
      if (res.change <= 1e-10 * (1.0 + std::abs(v))) break;
    }
    prev = v;
    have_prev = true;
  }
  return res;
}

std::vector<cplx> apply_regularizer(int m, double xi, const std::vector<cplx>& f, double dx) {
  if (m < 1) throw Error("apply_regularizer: order must be positive");
  int K = static_cast<int>(f.size());
  Grid g1 = Grid::make(1, 1.0, K);
  std::vector<cplx> buf = f;
  fft_block(g1, buf.data(), -1);
  const double dk = 2.0 * M_PI / (K * dx);
  for (int q = 0; q < K; ++q)
    buf[q] *= regularizer_multiplier(m, xi, dk * Grid::wave_number(q, K), 2 * q == K, false) / double(K);
  fft_block(g1, buf.data(), +1);
  return buf;
}

}  // namespace pdolab
