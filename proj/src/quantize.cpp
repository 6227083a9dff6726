#include <cmath>

#include "pdolab/calculus.hpp"

namespace pdolab {

namespace {

constexpr std::size_t kMaxTable = std::size_t(1) << 24;

void check_shapes(int l, const SampledField& u) {
  if (u.comps != l) throw Error("quantize: field has " + std::to_string(u.comps) + " components, symbol needs " +
                                std::to_string(l));
}

// e^{i x_i xi_k} = (-1)^kappa w^{i kappa} per axis, with w = e^{2 pi i / N}.
class PhaseTable {
 public:
  explicit PhaseTable(const Grid& g) : g_(g), w_(g.N) {
    for (int q = 0; q < g.N; ++q) w_[q] = std::polar(1.0, 2.0 * M_PI * q / g.N);
  }
  cplx axis(int i, int kidx) const {
    int kappa = Grid::wave_number(kidx, g_.N);
    long long r = (static_cast<long long>(i) * kappa) % g_.N;
    if (r < 0) r += g_.N;
    cplx v = w_[r];
    return (kappa & 1) ? -v : v;
  }
  void row(std::size_t k, std::vector<cplx>& out) const {
    std::size_t n = g_.size();
    out.resize(n);
    if (g_.n == 1) {
      for (std::size_t i = 0; i < n; ++i) out[i] = axis(static_cast<int>(i), static_cast<int>(k));
      return;
    }
    int k0 = static_cast<int>(k / g_.N), k1 = static_cast<int>(k % g_.N);
    for (int i0 = 0; i0 < g_.N; ++i0) {
      cplx e0 = axis(i0, k0);
      for (int i1 = 0; i1 < g_.N; ++i1) out[i0 * g_.N + i1] = e0 * axis(i1, k1);
    }
  }

 private:
  Grid g_;
  std::vector<cplx> w_;
};

double measure(const Grid& g) { return std::pow(1.0 / (2.0 * g.L), g.n); }

}  // namespace

SymbolTable SymbolTable::build(const Symbol& a, const Grid& g) {
  SymbolTable t;
  t.grid = g;
  t.l = a.meta.l;
  std::size_t n = g.size();
  if (n * n * t.comps() > kMaxTable) throw Error("quantize: symbol table too large for this grid");
  t.data.resize(n * n * t.comps());
  for (std::size_t k = 0; k < n; ++k) a.slice_into(g, g.xi(k), t.data.data() + k * t.comps() * n);
  return t;
}

SampledField quantize_reference(const Symbol& a, const SampledField& u) {
  const Grid& g = u.grid;
  const int l = a.meta.l;
  check_shapes(l, u);
  SampledField uh = fourier(u);
  std::size_t n = g.size();
  std::vector<SampledField> slices(n);
  for (std::size_t k = 0; k < n; ++k) slices[k] = a.slice(g, g.xi(k));
  SampledField out(g, l);
  const double dm = measure(g);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 x = g.x(i);
    for (int r = 0; r < l; ++r) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        Vec2 xi = g.xi(k);
        double phase = x[0] * xi[0] + (g.n == 2 ? x[1] * xi[1] : 0.0);
        cplx acc = 0.0;
        for (int c = 0; c < l; ++c) acc += slices[k].comp(r * l + c)[i] * uh.comp(c)[k];
        s += std::polar(1.0, phase) * acc;
      }
      out.comp(r)[i] = s * dm;
    }
  }
  return out;
}

SampledField quantize(const SymbolTable& t, const SampledField& u) {
  const Grid& g = u.grid;
  if (!(g == t.grid)) throw Error("quantize: grid mismatch");
  const int l = t.l;
  check_shapes(l, u);
  SampledField uh = fourier(u);
  PhaseTable pt(g);
  std::size_t n = g.size();
  SampledField out(g, l);
  std::vector<cplx> e;
  for (std::size_t k = 0; k < n; ++k) {
    pt.row(k, e);
    for (int r = 0; r < l; ++r) {
      cplx* o = out.comp(r);
      for (int c = 0; c < l; ++c) {
        cplx w = uh.comp(c)[k];
        if (w == 0.0) continue;
        const cplx* av = t.at(k, r * l + c);
        for (std::size_t i = 0; i < n; ++i) o[i] += e[i] * av[i] * w;
      }
    }
  }
  const double dm = measure(g);
  for (auto& v : out.values) v *= dm;
  return out;
}

SampledField quantize(const Symbol& a, const SampledField& u) {
  const Grid& g = u.grid;
  const int l = a.meta.l;
  check_shapes(l, u);
  SampledField uh = fourier(u);
  PhaseTable pt(g);
  std::size_t n = g.size();
  SampledField out(g, l);
  std::vector<cplx> e;
  SampledField sl(g, l * l);
  for (std::size_t k = 0; k < n; ++k) {
    bool any = false;
    for (int c = 0; c < l; ++c) any = any || uh.comp(c)[k] != 0.0;
    if (!any) continue;
    a.slice_into(g, g.xi(k), sl.values.data());
    pt.row(k, e);
    for (int r = 0; r < l; ++r) {
      cplx* o = out.comp(r);
      for (int c = 0; c < l; ++c) {
        cplx w = uh.comp(c)[k];
        const cplx* av = sl.comp(r * l + c);
        for (std::size_t i = 0; i < n; ++i) o[i] += e[i] * av[i] * w;
      }
    }
  }
  const double dm = measure(g);
  for (auto& v : out.values) v *= dm;
  return out;
}

}  // namespace pdolab
