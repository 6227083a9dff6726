#include <cmath>
#include <functional>

#include "pdolab/symbols.hpp"

namespace pdolab {

namespace {

constexpr cplx I(0.0, 1.0);

double br(const Vec2& xi) { return std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]); }

using ScalarFn = std::function<cplx(const Vec2&, const Vec2&)>;
using ScalarLimit = std::function<cplx(const Vec2&)>;

Symbol scalar(const std::string& id, SymbolMeta meta, ScalarFn f, ScalarLimit lim = {}) {
  meta.l = 1;
  LimitEval le;
  if (lim) le = [lim](const Vec2& xi, cplx* out) { out[0] = lim(xi); };
  return Symbol::from_point(
      id, meta, [f](const Vec2& x, const Vec2& xi, cplx* out) { out[0] = f(x, xi); }, le);
}

struct Entry {
  std::string description;
  SymbolParams defaults;
  std::function<Symbol(const std::string&, const SymbolParams&)> build;
};

double weierstrass(double x, int J, double tau) {
  double s = 0;
  for (int j = 0; j <= J; ++j) s += std::pow(2.0, -j * tau) * std::cos(std::ldexp(x, j));
  return s;
}

const std::map<std::string, Entry>& table() {
  static const std::map<std::string, Entry> t = [] {
    std::map<std::string, Entry> t;
    t["unit"] = {"a = 1 (times the identity for l > 1)", {{"l", 1}}, [](const std::string& id, const SymbolParams& p) {
                   SymbolMeta mt;
                   mt.l = static_cast<int>(p.at("l"));
                   int l = mt.l;
                   auto fill = [l](cplx* out) {
                     for (int i = 0; i < l * l; ++i) out[i] = (i % (l + 1) == 0) ? 1.0 : 0.0;
                   };
                   return Symbol::from_point(
                       id, mt, [fill](const Vec2&, const Vec2&, cplx* out) { fill(out); },
                       [fill](const Vec2&, cplx* out) { fill(out); });
                 }};
    t["bracket_power"] = {"<xi>^m times the identity", {{"m", 1}, {"l", 1}},
                          [](const std::string& id, const SymbolParams& p) {
                            SymbolMeta mt;
                            mt.m = p.at("m");
                            mt.l = static_cast<int>(p.at("l"));
                            int l = mt.l;
                            double m = mt.m;
                            auto fill = [l, m](const Vec2& xi, cplx* out) {
                              double v = std::pow(br(xi), m);
                              for (int i = 0; i < l * l; ++i) out[i] = (i % (l + 1) == 0) ? v : 0.0;
                            };
                            return Symbol::from_point(
                                id, mt, [fill](const Vec2&, const Vec2& xi, cplx* out) { fill(xi, out); },
                                [fill](const Vec2& xi, cplx* out) { fill(xi, out); });
                          }};
    t["exp_phase"] = {"e^{i x_1} <xi>^m", {{"m", 1}}, [](const std::string& id, const SymbolParams& p) {
                        SymbolMeta mt;
                        mt.m = p.at("m");
                        double m = mt.m;
                        return scalar(id, mt, [m](const Vec2& x, const Vec2& xi) {
                          return std::polar(1.0, x[0]) * std::pow(br(xi), m);
                        });
                      }};
    t["cos_profile"] = {"(2 + cos x_1) <xi>^m", {{"m", 1}}, [](const std::string& id, const SymbolParams& p) {
                          SymbolMeta mt;
                          mt.m = p.at("m");
                          double m = mt.m;
                          return scalar(id, mt, [m](const Vec2& x, const Vec2& xi) {
                            return cplx((2.0 + std::cos(x[0])) * std::pow(br(xi), m));
                          });
                        }};
    t["sin_profile"] = {"sin(x_1) <xi>^m", {{"m", 0}}, [](const std::string& id, const SymbolParams& p) {
                          SymbolMeta mt;
                          mt.m = p.at("m");
                          double m = mt.m;
                          return scalar(id, mt, [m](const Vec2& x, const Vec2& xi) {
                            return cplx(std::sin(x[0]) * std::pow(br(xi), m));
                          });
                        }};
    t["rough_profile"] = {"(2 + cos x_1 + kappa |sin x_1|^tau) <xi>^m, Hoelder of order tau in x",
                          {{"m", 1}, {"kappa", 0.5}, {"tau", 0.7}},
                          [](const std::string& id, const SymbolParams& p) {
                            SymbolMeta mt;
                            mt.m = p.at("m");
                            mt.tau = p.at("tau");
                            mt.mtilde = 0;
                            mt.smooth_x = p.at("kappa") == 0.0;
                            double m = mt.m, k = p.at("kappa"), tau = mt.tau;
                            return scalar(id, mt, [m, k, tau](const Vec2& x, const Vec2& xi) {
                              double v = 2.0 + std::cos(x[0]) + k * std::pow(std::abs(std::sin(x[0])), tau);
                              return cplx(v * std::pow(br(xi), m));
                            });
                          }};
    t["weierstrass"] = {"sum_{j<=J} 2^{-j tau} cos(2^j x_1) times <xi>^m",
                        {{"m", 0}, {"J", 8}, {"tau", 0.7}},
                        [](const std::string& id, const SymbolParams& p) {
                          SymbolMeta mt;
                          mt.m = p.at("m");
                          mt.tau = p.at("tau");
                          mt.mtilde = 0;
                          mt.smooth_x = false;
                          double m = mt.m, tau = mt.tau;
                          int J = static_cast<int>(p.at("J"));
                          return scalar(id, mt, [m, J, tau](const Vec2& x, const Vec2& xi) {
                            return cplx(weierstrass(x[0], J, tau) * std::pow(br(xi), m));
                          });
                        }};
    t["gauss_decay"] = {"e^{-|x|^2} <xi>^m, limit 0", {{"m", 0}}, [](const std::string& id, const SymbolParams& p) {
                          SymbolMeta mt;
                          mt.m = p.at("m");
                          mt.x_periodic = false;
                          double m = mt.m;
                          return scalar(
                              id, mt,
                              [m](const Vec2& x, const Vec2& xi) {
                                return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1])) * std::pow(br(xi), m));
                              },
                              [](const Vec2&) { return cplx(0.0); });
                        }};
    t["limit_perturbed"] = {"<xi>^m + c e^{-|x|} <xi>^m (1 + i xi_1/<xi>), limit <xi>^m",
                            {{"m", 0}, {"c", 0.5}},
                            [](const std::string& id, const SymbolParams& p) {
                              SymbolMeta mt;
                              mt.m = p.at("m");
                              mt.smooth_x = false;
                              mt.mtilde = 0;
                              mt.tau = 0.9;
                              mt.x_periodic = false;
                              double m = mt.m, c = p.at("c");
                              return scalar(
                                  id, mt,
                                  [m, c](const Vec2& x, const Vec2& xi) {
                                    double b = br(xi);
                                    double r = std::hypot(x[0], x[1]);
                                    return std::pow(b, m) * (1.0 + c * std::exp(-r) * (1.0 + I * xi[0] / b));
                                  },
                                  [m](const Vec2& xi) { return cplx(std::pow(br(xi), m)); });
                            }};
    t["deriv"] = {"i xi_1", {}, [](const std::string& id, const SymbolParams&) {
                    SymbolMeta mt;
                    mt.m = 1;
                    return scalar(id, mt, [](const Vec2&, const Vec2& xi) { return I * xi[0]; });
                  }};
    t["multiplier"] = {"v(x) = 1 + c sin x_1", {{"c", 0.5}}, [](const std::string& id, const SymbolParams& p) {
                         SymbolMeta mt;
                         mt.m = 0;
                         double c = p.at("c");
                         return scalar(id, mt,
                                       [c](const Vec2& x, const Vec2&) { return cplx(1.0 + c * std::sin(x[0])); });
                       }};
    t["ladder"] = {"i xi_1 + x_1", {}, [](const std::string& id, const SymbolParams&) {
                     SymbolMeta mt;
                     mt.m = 1;
                     mt.x_periodic = false;
                     return scalar(id, mt, [](const Vec2& x, const Vec2& xi) { return x[0] + I * xi[0]; });
                   }};
    t["ladder_adjoint"] = {"-i xi_1 + x_1", {}, [](const std::string& id, const SymbolParams&) {
                             SymbolMeta mt;
                             mt.m = 1;
                             mt.x_periodic = false;
                             return scalar(id, mt, [](const Vec2& x, const Vec2& xi) { return x[0] - I * xi[0]; });
                           }};
    t["xi_over_bracket"] = {"xi_1 / <xi>", {}, [](const std::string& id, const SymbolParams&) {
                              SymbolMeta mt;
                              return scalar(id, mt, [](const Vec2&, const Vec2& xi) { return cplx(xi[0] / br(xi)); });
                            }};
    t["phase_space_unit"] = {"(x_1 + i xi_1) / <(x_1, xi_1)>", {}, [](const std::string& id, const SymbolParams&) {
                               SymbolMeta mt;
                               mt.x_periodic = false;
                               return scalar(id, mt, [](const Vec2& x, const Vec2& xi) {
                                 return (x[0] + I * xi[0]) / std::sqrt(1.0 + x[0] * x[0] + xi[0] * xi[0]);
                               });
                             }};
    t["elliptic_order0"] = {"(2 + cos x_1 + 0.5 i sin(x_1) xi_1/<xi>) <xi>^m", {{"m", 0}},
                            [](const std::string& id, const SymbolParams& p) {
                              SymbolMeta mt;
                              mt.m = p.at("m");
                              double m = mt.m;
                              return scalar(id, mt, [m](const Vec2& x, const Vec2& xi) {
                                cplx v = 2.0 + std::cos(x[0]) + 0.5 * I * std::sin(x[0]) * xi[0] / br(xi);
                                return v * std::pow(br(xi), m);
                              });
                            }};
    t["matrix_profile"] = {"[[2 + cos x_1, 0.3 sin x_1], [0.3 i, 1]] <xi>^m", {{"m", 0}},
                           [](const std::string& id, const SymbolParams& p) {
                             SymbolMeta mt;
                             mt.m = p.at("m");
                             mt.l = 2;
                             double m = mt.m;
                             return Symbol::from_point(id, mt, [m](const Vec2& x, const Vec2& xi, cplx* out) {
                               double w = std::pow(br(xi), m);
                               out[0] = (2.0 + std::cos(x[0])) * w;
                               out[1] = 0.3 * std::sin(x[0]) * w;
                               out[2] = 0.3 * I * w;
                               out[3] = w;
                             });
                           }};
    return t;
  }();
  return t;
}

}  // namespace

std::vector<SymbolInfo> symbol_registry() {
  std::vector<SymbolInfo> out;
  for (const auto& [name, e] : table()) out.push_back({name, e.description});
  return out;
}

bool has_symbol(const std::string& name) { return table().count(name) != 0; }

Symbol make_symbol(const std::string& name, const SymbolParams& params) {
  auto it = table().find(name);
  if (it == table().end()) throw Error("unknown symbol '" + name + "'");
  SymbolParams p = it->second.defaults;
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw Error("symbol '" + name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw Error("symbol '" + name + "': parameter '" + k + "' is not finite");
    p[k] = v;
  }
  if (p.count("l") && (p["l"] < 1 || p["l"] > 3 || p["l"] != std::floor(p["l"])))
    throw Error("symbol '" + name + "': l must be 1, 2 or 3");
  return it->second.build(name, p);
}

}  // namespace pdolab
