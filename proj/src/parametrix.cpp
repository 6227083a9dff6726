#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "pdolab/calculus.hpp"

namespace pdolab {

namespace {

std::string where(const Vec2& x, const Vec2& xi) {
  std::ostringstream os;
  os << "x = (" << x[0] << ", " << x[1] << "), xi = (" << xi[0] << ", " << xi[1] << ")";
  return os.str();
}

}  // namespace

Parametrix build_parametrix(const Symbol& a, const Grid& g, double R, double C0) {
  if (!(R > 0)) throw Error("build_parametrix: R must be positive");
  Parametrix q;
  q.m = a.meta.m;
  q.R = R;
  q.gate = is_elliptic(a, g, R, C0);
  if (!q.gate.elliptic)
    throw Error("build_parametrix: ellipticity gate fails at " + where(q.gate.witness_x, q.gate.witness_xi));
  SymbolMeta mt = a.meta;
  mt.m = 0.0;
  mt.x_periodic = false;
  const int l = mt.l;
  const double m = a.meta.m;
  SliceEval base = a.slicer;
  q.b = Symbol::from_slice(
      a.id + "_inv", mt, [base, l, m, R](const Grid& gg, const Vec2& xi, cplx* out) {
        const std::size_t n = gg.size();
        const int comps = l * l;
        base(gg, xi, out);
        const double wxi = std::pow(bracket(xi, gg.n), -m);
        const double xi2 = xi[0] * xi[0] + (gg.n == 2 ? xi[1] * xi[1] : 0.0);
        Eigen::MatrixXcd A(l, l);
        for (std::size_t i = 0; i < n; ++i) {
          Vec2 x = gg.x(i);
          double x2 = x[0] * x[0] + (gg.n == 2 ? x[1] * x[1] : 0.0);
          double psi = excision((x2 + xi2) / (R * R));
          if (psi == 0.0) {
            for (int c = 0; c < comps; ++c) out[c * n + i] = 0.0;
            continue;
          }
          if (l == 1) {
            cplx v = out[i] * wxi;
            if (v == 0.0) throw Error("build_parametrix: singular symbol at " + where(x, xi) + " (corrupt input)");
            out[i] = psi / v;
            continue;
          }
          for (int r = 0; r < l; ++r)
            for (int c = 0; c < l; ++c) A(r, c) = out[(r * l + c) * n + i] * wxi;
          Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
          if (!lu.isInvertible())
            throw Error("build_parametrix: singular matrix at " + where(x, xi) + " (corrupt input)");
          Eigen::MatrixXcd B = lu.inverse();
          for (int r = 0; r < l; ++r)
            for (int c = 0; c < l; ++c) out[(r * l + c) * n + i] = psi * B(r, c);
        }
      });
  return q;
}

SampledField apply_parametrix(const Parametrix& q, const SampledField& u) {
  return bessel_multiplier(quantize(q.b, u), -q.m);
}

Symbol limit_symbol(const Symbol& a) {
  if (!a.limit) throw Error("symbol " + a.id + ": no limit symbol");
  SymbolMeta mt = a.meta;
  mt.smooth_x = true;
  mt.x_periodic = true;
  LimitEval lim = a.limit;
  return Symbol::from_point(
      a.id + "_inf", mt, [lim](const Vec2&, const Vec2& xi, cplx* out) { lim(xi, out); }, lim);
}

Symbol localize_at_infinity(const Symbol& a, double R) {
  if (!a.limit) throw Error("localize_at_infinity: symbol " + a.id + " has no limit a(infinity, xi)");
  if (!(R > 0)) throw Error("localize_at_infinity: radius must be positive");
  SymbolMeta mt = a.meta;
  mt.x_periodic = false;
  SliceEval base = a.slicer;
  LimitEval lim = a.limit;
  int comps = a.comps();
  return Symbol::from_slice(
      a.id + "_loc", mt,
      [base, lim, comps, R](const Grid& g, const Vec2& xi, cplx* out) {
        base(g, xi, out);
        std::vector<cplx> inf(comps);
        lim(xi, inf.data());
        const std::size_t n = g.size();
        for (std::size_t i = 0; i < n; ++i) {
          double psi = excision(g.x_norm(i) / R);
          if (psi == 1.0) continue;
          for (int c = 0; c < comps; ++c) out[c * n + i] = psi * out[c * n + i] + (1.0 - psi) * inf[c];
        }
      },
      lim);
}

}  // namespace pdolab
