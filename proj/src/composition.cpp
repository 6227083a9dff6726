#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pdolab/calculus.hpp"

namespace pdolab {

namespace {

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double multi_factorial(const MultiIndex& g) { return factorial(g[0]) * factorial(g[1]); }

void check_pair(const Symbol& a1, const Symbol& a2, int k, int budget, const char* who) {
  if (a1.meta.l != a2.meta.l) throw Error(std::string(who) + ": matrix sizes differ");
  if (k < 1) throw Error(std::string(who) + ": k must be positive");
  if (!a2.meta.smooth_x) throw Error(std::string(who) + ": second symbol must be smooth in x");
  if (!a2.meta.x_periodic) throw Error(std::string(who) + ": second symbol must be periodic in x on the lattice");
  if (a1.meta.M >= 0 && a1.meta.M < budget) throw Error(std::string(who) + ": xi-derivative budget of a1 exceeded");
}

SymbolMeta composed_meta(const Symbol& a1, const Symbol& a2, double order) {
  SymbolMeta mt = a1.meta;
  mt.m = order;
  mt.rho = std::min(a1.meta.rho, a2.meta.rho);
  mt.delta = std::max(a1.meta.delta, a2.meta.delta);
  mt.x_periodic = a1.meta.x_periodic;
  mt.M = -1;
  return mt;
}

// out += c * A * B per lattice point, all blocks component-major with stride n.
void accumulate_product(int l, std::size_t n, cplx c, const cplx* A, const cplx* B, cplx* out) {
  for (int r = 0; r < l; ++r)
    for (int q = 0; q < l; ++q) {
      cplx* o = out + (r * l + q) * n;
      for (int d = 0; d < l; ++d) {
        const cplx* ar = A + (r * l + d) * n;
        const cplx* bq = B + (d * l + q) * n;
        for (std::size_t i = 0; i < n; ++i) o[i] += c * ar[i] * bq[i];
      }
    }
}

// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
void gauss_legendre01(int m, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    double v = es.eigenvectors()(0, i);
    x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    w[i] = v * v;  // total weight 2 on [-1, 1], halved for [0, 1]
  }
}

// Slice of the remainder at one xi.
void remainder_slice(const Symbol& a1, const Symbol& a2, int k, const RemainderOptions& o, const Grid& g,
                     const Vec2& xi, cplx* out) {
  const int l = a1.meta.l, comps = l * l;
  const std::size_t n = g.size();
  std::fill(out, out + n * comps, cplx(0.0));
  SampledField a2h = fourier(a2.slice(g, xi));
  std::vector<double> tx, tw;
  gauss_legendre01(o.theta_nodes, tx, tw);
  const double norm = std::pow(1.0 / (2.0 * g.L), g.n);
  double peak = 0.0;
  for (const cplx& c : a2h.values) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return;

  std::vector<cplx> mode(comps);
  std::vector<cplx> phase(n);
  for (const MultiIndex& gam : multi_indices(g.n, k, true)) {
    double gf = multi_factorial(gam);
    for (std::size_t p = 0; p < n; ++p) {
      Vec2 pv = g.xi(p);
      // x-Fourier mode of D_x^gamma a2: multiplier p^gamma.
      double pg = std::pow(pv[0], gam[0]) * (g.n == 2 ? std::pow(pv[1], gam[1]) : 1.0);
      if (pg == 0.0) continue;
      bool any = false;
      for (int c = 0; c < comps; ++c) {
        mode[c] = a2h.comp(c)[p] * pg * norm;
        any = any || std::abs(a2h.comp(c)[p]) > o.mode_cutoff * peak;
      }
      if (!any) continue;
      for (std::size_t i = 0; i < n; ++i) {
        Vec2 x = g.x(i);
        phase[i] = std::polar(1.0, x[0] * pv[0] + (g.n == 2 ? x[1] * pv[1] : 0.0));
      }
      for (std::size_t q = 0; q < tx.size(); ++q) {
        double th = tx[q];
        Vec2 z{xi[0] + th * pv[0], xi[1] + th * pv[1]};
        SampledField d = xi_derivative(a1, g, z, gam, o.hxi);
        double wq = k * tw[q] * std::pow(1.0 - th, k - 1) / gf;
        for (int r = 0; r < l; ++r)
          for (int c = 0; c < l; ++c) {
            cplx* dst = out + (r * l + c) * n;
            for (int e = 0; e < l; ++e) {
              const cplx* dv = d.comp(r * l + e);
              cplx mc = mode[e * l + c] * wq;
              for (std::size_t i = 0; i < n; ++i) dst[i] += dv[i] * phase[i] * mc;
            }
          }
      }
    }
  }
}

}  // namespace

Symbol compose_expansion(const Symbol& a1, const Symbol& a2, int k, double hxi) {
  check_pair(a1, a2, k, k - 1, "compose_expansion");
  if (k > 5) throw Error("compose_expansion: k above 5 exceeds the difference stencils");
  int l = a1.meta.l;
  SliceEval f = [a1, a2, k, hxi, l](const Grid& g, const Vec2& xi, cplx* out) {
    const std::size_t n = g.size();
    const int comps = l * l;
    std::fill(out, out + n * comps, cplx(0.0));
    SampledField s2 = a2.slice(g, xi);
    SampledField d2(g, comps);
    for (int ord = 0; ord < k; ++ord) {
      for (const MultiIndex& gam : multi_indices(g.n, ord, true)) {
        SampledField d1 = xi_derivative(a1, g, xi, gam, hxi);
        // D_x^gamma = (-i)^{|gamma|} d_x^gamma, taken spectrally.
        std::vector<cplx> tmp(n);
        for (int c = 0; c < comps; ++c) {
          const cplx* src = s2.comp(c);
          std::copy(src, src + n, d2.comp(c));
          for (int ax = 0; ax < g.n; ++ax) {
            if (gam[ax] == 0) continue;
            spectral_derivative(g, d2.comp(c), ax, gam[ax], tmp.data());
            std::copy(tmp.begin(), tmp.end(), d2.comp(c));
          }
        }
        cplx coef = std::pow(cplx(0.0, -1.0), ord) / multi_factorial(gam);
        accumulate_product(l, n, coef, d1.values.data(), d2.values.data(), out);
      }
    }
  };
  return Symbol::from_slice(a1.id + "#" + std::to_string(k) + a2.id, composed_meta(a1, a2, a1.meta.m + a2.meta.m), f);
}

Symbol compose_remainder(const Symbol& a1, const Symbol& a2, int k, const RemainderOptions& o) {
  check_pair(a1, a2, k, k, "compose_remainder");
  if (k > 4) throw Error("compose_remainder: k above 4 exceeds the difference stencils");
  if (o.theta_nodes < 1) throw Error("compose_remainder: need at least one theta node");
  double order = a1.meta.m + a2.meta.m - (std::min(a1.meta.rho, a2.meta.rho) - std::max(a1.meta.delta, a2.meta.delta)) * k;
  SliceEval f = [a1, a2, k, o](const Grid& g, const Vec2& xi, cplx* out) { remainder_slice(a1, a2, k, o, g, xi, out); };
  return Symbol::from_slice("R" + std::to_string(k) + "(" + a1.id + "," + a2.id + ")", composed_meta(a1, a2, order), f);
}

double remainder_node_agreement(const Symbol& a1, const Symbol& a2, int k, const Grid& g,
                                const RemainderOptions& o) {
  RemainderOptions o2 = o;
  o2.theta_nodes = 2 * o.theta_nodes;
  Symbol r1 = compose_remainder(a1, a2, k, o), r2 = compose_remainder(a1, a2, k, o2);
  double worst = 0.0;
  for (const Vec2& xi : xi_samples(g, 16)) {
    SampledField s1 = r1.slice(g, xi), s2 = r2.slice(g, xi);
    double num = 0;
    for (std::size_t i = 0; i < s1.values.size(); ++i) num = std::max(num, std::abs(s1.values[i] - s2.values[i]));
    double scale = std::max(sup_norm(a1.slice(g, xi)) * sup_norm(a2.slice(g, xi)),
                            std::pow(bracket(xi, g.n), a1.meta.m + a2.meta.m));
    worst = std::max(worst, num / scale);
  }
  return worst;
}

}  // namespace pdolab
