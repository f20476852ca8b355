#include "cosurf/catalog.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <set>

#include "cosurf/errors.hpp"

namespace cosurf {

namespace {

constexpr double kPi = std::numbers::pi;

AmbientVector vec(const SpaceForm& form, std::initializer_list<double> leading) {
  AmbientVector v = form.zero_vector();
  int i = 0;
  for (double x : leading) v[i++] = x;
  return v;
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> list = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"plane", "Euclidean plane (u, v, 0) in R^3", true,
                 {{"extent", 10.0, 0.1, 1e4}},
                 ReferenceValue{1.0, "topology: disk"},
                 ReferenceValue{0.0, "closed form: B = 0"},
                 ReferenceValue{1.0, "closed form: D_t is a round disk"}});
    e.push_back({"plane_polar", "Euclidean plane in polar chart (v cos u, v sin u, 0)", true,
                 {{"extent", 10.0, 0.1, 1e4}},
                 ReferenceValue{1.0, "topology: disk"},
                 ReferenceValue{0.0, "closed form: B = 0"},
                 ReferenceValue{1.0, "closed form: D_t is a round disk"}});
    e.push_back({"catenoid", "catenoid (a cosh(v/a) cos u, a cosh(v/a) sin u, v), u periodic", true,
                 {{"neck", 1.0, 1e-3, 1e3}, {"v_extent", 6.0, 0.5, 30.0}},
                 ReferenceValue{0.0, "topology: annulus"},
                 ReferenceValue{8.0 * kPi, "closed form: 2 pi int 2 sech^2 v dv"},
                 ReferenceValue{2.0, "two planar ends of multiplicity one"}});
    e.push_back({"enneper", "Enneper surface from Weierstrass data (1, z)", true,
                 {{"extent", 4.0, 0.5, 40.0}},
                 ReferenceValue{1.0, "topology: disk"},
                 ReferenceValue{8.0 * kPi, "closed form: total Gauss curvature -4 pi"},
                 ReferenceValue{3.0, "one end of multiplicity three"}});
    e.push_back({"helicoid", "helicoid (v cos u, v sin u, u); infinite total curvature", true,
                 {{"extent", 10.0, 0.5, 1e3}},
                 ReferenceValue{1.0, "topology: disk"},
                 std::nullopt, std::nullopt});
    e.push_back({"h2_in_h3", "totally geodesic H^2(b) in H^3(b), geodesic polar chart", true,
                 {{"b", -1.0, -100.0, -1e-6}, {"s_max", 9.0, 0.5, 12.0}},
                 ReferenceValue{1.0, "topology: disk"},
                 ReferenceValue{0.0, "closed form: totally geodesic"},
                 ReferenceValue{1.0, "closed form: D_t is a geodesic disk"}});
    e.push_back({"hyperbolic_catenoid",
                 "rotational minimal annulus about a geodesic of H^3(b), first integral c", true,
                 {{"c", 1.0, 1e-6, 1e6}, {"w_max", 18.0, 1.0, 22.0}, {"b", -1.0, -100.0, -1e-6}},
                 ReferenceValue{0.0, "topology: annulus"},
                 std::nullopt, std::nullopt});
    e.push_back({"sphere", "round sphere in R^3 with an off-center interior pole (non-minimal)",
                 false,
                 {{"radius", 1.0, 1e-3, 1e3}, {"pole_offset", 0.2, 0.0, 0.99}},
                 ReferenceValue{2.0, "topology: sphere"},
                 std::nullopt, std::nullopt});
    return e;
  }();
  return list;
}

SurfaceParams resolve_params(const CatalogEntry& entry, const SurfaceParams& given) {
  SurfaceParams out;
  std::set<std::string> known;
  for (const auto& p : entry.params) {
    known.insert(p.name);
    out[p.name] = p.default_value;
  }
  for (const auto& [key, value] : given) {
    if (!known.count(key))
      throw Error(ErrorKind::domain, "surface '" + entry.name + "' has no parameter '" + key + "'");
    out[key] = value;
  }
  for (const auto& p : entry.params) {
    const double v = out[p.name];
    if (!(v >= p.min && v <= p.max))
      throw Error(ErrorKind::domain, "parameter '" + p.name + "' of '" + entry.name +
                                         "' outside [" + std::to_string(p.min) + ", " +
                                         std::to_string(p.max) + "]");
  }
  return out;
}

CatalogSurface finish(const std::string& name, ParametricSurface surface, AmbientVector pole,
                      std::optional<Vec2> pole_chart) {
  return CatalogSurface{name, std::move(surface), std::move(pole), pole_chart,
                        catalog_entry(name)};
}

CatalogSurface make_plane(double extent) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{-extent, extent, -extent, extent};
  auto jet = [form](double u, double v) {
    return ChartJet{vec(form, {u, v, 0.0}), vec(form, {1.0, 0.0, 0.0}), vec(form, {0.0, 1.0, 0.0}),
                    form.zero_vector(), form.zero_vector(), form.zero_vector()};
  };
  return finish("plane", ParametricSurface(form, d, jet, "plane", true), form.origin(), Vec2(0, 0));
}

CatalogSurface make_plane_polar(double extent) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{0.0, 2.0 * kPi, 0.0, extent, true, false, true, false};
  auto jet = [form](double u, double v) {
    const double c = std::cos(u), s = std::sin(u);
    return ChartJet{vec(form, {v * c, v * s, 0.0}), vec(form, {-v * s, v * c, 0.0}),
                    vec(form, {c, s, 0.0}),         vec(form, {-v * c, -v * s, 0.0}),
                    vec(form, {-s, c, 0.0}),        form.zero_vector()};
  };
  return finish("plane_polar", ParametricSurface(form, d, jet, "plane_polar", true), form.origin(),
                Vec2(0, 0));
}

CatalogSurface make_catenoid(double a, double v_extent) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{0.0, 2.0 * kPi, -v_extent, v_extent, true, false};
  auto jet = [form, a](double u, double v) {
    const double ch = std::cosh(v / a), sh = std::sinh(v / a);
    const double c = std::cos(u), s = std::sin(u);
    return ChartJet{vec(form, {a * ch * c, a * ch * s, v}),
                    vec(form, {-a * ch * s, a * ch * c, 0.0}),
                    vec(form, {sh * c, sh * s, 1.0}),
                    vec(form, {-a * ch * c, -a * ch * s, 0.0}),
                    vec(form, {-sh * s, sh * c, 0.0}),
                    vec(form, {ch * c / a, ch * s / a, 0.0})};
  };
  return finish("catenoid", ParametricSurface(form, d, jet, "catenoid", true),
                vec(form, {a, 0.0, 0.0}), Vec2(0, 0));
}

CatalogSurface make_enneper(double extent) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{-extent, extent, -extent, extent};
  auto jet = [form](double u, double v) {
    return ChartJet{vec(form, {u - u * u * u / 3.0 + u * v * v, -v + v * v * v / 3.0 - u * u * v,
                               u * u - v * v}),
                    vec(form, {1.0 - u * u + v * v, -2.0 * u * v, 2.0 * u}),
                    vec(form, {2.0 * u * v, -1.0 + v * v - u * u, -2.0 * v}),
                    vec(form, {-2.0 * u, -2.0 * v, 2.0}),
                    vec(form, {2.0 * v, -2.0 * u, 0.0}),
                    vec(form, {2.0 * u, 2.0 * v, -2.0})};
  };
  return finish("enneper", ParametricSurface(form, d, jet, "enneper", true), form.origin(),
                Vec2(0, 0));
}

CatalogSurface make_helicoid(double extent) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{-extent, extent, -extent, extent};
  auto jet = [form](double u, double v) {
    const double c = std::cos(u), s = std::sin(u);
    return ChartJet{vec(form, {v * c, v * s, u}), vec(form, {-v * s, v * c, 1.0}),
                    vec(form, {c, s, 0.0}),       vec(form, {-v * c, -v * s, 0.0}),
                    vec(form, {-s, c, 0.0}),      form.zero_vector()};
  };
  return finish("helicoid", ParametricSurface(form, d, jet, "helicoid", true), form.origin(),
                Vec2(0, 0));
}

CatalogSurface make_h2_in_h3(double b, double s_max) {
  const SpaceForm form(b, 3);
  const double k = form.scale();
  ParameterDomain d{0.0, 2.0 * kPi, 0.0, s_max, true, false, true, false};
  auto jet = [form, k](double u, double s) {
    const double ch = std::cosh(k * s), sh = std::sinh(k * s);
    const double c = std::cos(u), sn = std::sin(u);
    return ChartJet{vec(form, {ch / k, sh * c / k, sh * sn / k, 0.0}),
                    vec(form, {0.0, -sh * sn / k, sh * c / k, 0.0}),
                    vec(form, {sh, ch * c, ch * sn, 0.0}),
                    vec(form, {0.0, -sh * c / k, -sh * sn / k, 0.0}),
                    vec(form, {0.0, -ch * sn, ch * c, 0.0}),
                    vec(form, {k * ch, k * sh * c, k * sh * sn, 0.0})};
  };
  return finish("h2_in_h3", ParametricSurface(form, d, jet, "h2_in_h3", true), form.origin(),
                Vec2(0, 0));
}

CatalogSurface make_sphere(double radius, double offset) {
  const SpaceForm form(0.0, 3);
  ParameterDomain d{0.0, 2.0 * kPi, 0.0, kPi, true, false, true, true};
  auto jet = [form, radius](double u, double v) {
    const double R = radius;
    const double st = std::sin(u), ct = std::cos(u), sp = std::sin(v), cp = std::cos(v);
    return ChartJet{vec(form, {R * sp * ct, R * sp * st, R * cp}),
                    vec(form, {-R * sp * st, R * sp * ct, 0.0}),
                    vec(form, {R * cp * ct, R * cp * st, -R * sp}),
                    vec(form, {-R * sp * ct, -R * sp * st, 0.0}),
                    vec(form, {-R * cp * st, R * cp * ct, 0.0}),
                    vec(form, {-R * sp * ct, -R * sp * st, -R * cp})};
  };
  return finish("sphere", ParametricSurface(form, d, jet, "sphere", false),
                vec(form, {offset * radius, 0.0, 0.0}), std::nullopt);
}

// Profile of the rotational minimal surface in Fermi coordinates about the
// axis (cosh tau, sinh tau, 0, 0). With sinh(2 rho) = 2 c cosh w the first
// integral sinh(rho) cosh^2(rho) dtau/ds = c becomes the regular equation
// dtau/dw = c / (cosh(rho) cosh(2 rho)).
struct CatenoidProfile {
  double c = 1.0;
  double node_spacing = 1.0 / 256.0;
  std::vector<double> tau;  // tau(i * node_spacing), i >= 0

  struct Point {
    double rho, drho, ddrho, tau, dtau, ddtau;
  };

  double axial_speed(double w) const {
    const double q = 2.0 * c * std::cosh(w);
    const double c2 = std::sqrt(1.0 + q * q);  // cosh(2 rho)
    const double rho = 0.5 * std::asinh(q);
    return c / (std::cosh(rho) * c2);
  }

  Point at(double w) const {
    Point p{};
    const double q = 2.0 * c * std::cosh(w);
    const double one_q2 = 1.0 + q * q;
    const double c2 = std::sqrt(one_q2);
    const double sw = std::sinh(w), cw = std::cosh(w);
    p.rho = 0.5 * std::asinh(q);
    p.drho = c * sw / c2;
    p.ddrho = c * cw / c2 - 2.0 * c * c * sw * sw * q / (one_q2 * c2);
    const double ch = std::cosh(p.rho), sh = std::sinh(p.rho);
    p.dtau = c / (ch * c2);
    p.ddtau = -c * p.drho * (sh * c2 + 2.0 * ch * q) / (ch * ch * one_q2);
    p.tau = tau_at(w);
    return p;
  }

  double tau_at(double w) const {
    const double aw = std::abs(w);
    const double sign = w < 0.0 ? -1.0 : 1.0;
    const double pos = aw / node_spacing;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= tau.size()) i = tau.size() - 2;
    const double h = node_spacing;
    const double s = pos - static_cast<double>(i);
    const double w0 = static_cast<double>(i) * h, w1 = w0 + h;
    const double y0 = tau[i], y1 = tau[i + 1];
    const double d0 = axial_speed(w0) * h, d1 = axial_speed(w1) * h;
    // cubic Hermite on the node interval
    const double s2 = s * s, s3 = s2 * s;
    const double val = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
    return sign * val;
  }
};

CatalogSurface make_hyperbolic_catenoid(double c, double w_max, double b) {
  return solve_hyperbolic_catenoid(c, w_max, b);
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() { return entries(); }

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.name == name) return e;
  throw Error(ErrorKind::unknown_surface, name);
}

double hyperbolic_catenoid_neck(double c) {
  if (!(c > 0.0))
    throw Error(ErrorKind::domain, "first integral c must be positive for a neck to exist");
  return 0.5 * std::asinh(2.0 * c);
}

CatalogSurface solve_hyperbolic_catenoid(double c, double w_max, double curvature) {
  hyperbolic_catenoid_neck(c);
  if (!(w_max > 0.0)) throw Error(ErrorKind::domain, "w_max must be positive");
  const SpaceForm form(curvature, 3);
  const double k = form.scale();

  auto profile = std::make_shared<CatenoidProfile>();
  profile->c = c;
  const std::size_t nodes =
      static_cast<std::size_t>(std::ceil((w_max + 1.0) / profile->node_spacing)) + 2;
  std::vector<double> times(nodes);
  for (std::size_t i = 0; i < nodes; ++i) times[i] = static_cast<double>(i) * profile->node_spacing;

  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 1>;
  State y{0.0};
  auto rhs = [&](const State&, State& dy, double w) { dy[0] = profile->axial_speed(w); };
  profile->tau.reserve(nodes);
  try {
    auto stepper = odeint::make_controlled(1e-10, 1e-10, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), profile->node_spacing,
                            [&](const State& s, double) { profile->tau.push_back(s[0]); });
  } catch (const std::exception& ex) {
    throw Error(ErrorKind::construction, std::string("profile integration failed: ") + ex.what());
  }
  if (profile->tau.size() != nodes)
    throw Error(ErrorKind::construction, "profile integration stopped early");

  ParameterDomain d{0.0, 2.0 * kPi, -w_max, w_max, true, false};
  auto jet = [form, k, profile](double theta, double w) {
    const auto p = profile->at(w);
    const double ch = std::cosh(p.rho), sh = std::sinh(p.rho);
    const double ct = std::cosh(p.tau), st = std::sinh(p.tau);
    const double ca = std::cos(theta), sa = std::sin(theta);
    const AmbientVector A = vec(form, {ct, st, 0.0, 0.0});
    const AmbientVector dA = vec(form, {st, ct, 0.0, 0.0});
    const AmbientVector E = vec(form, {0.0, 0.0, ca, sa});
    const AmbientVector dE = vec(form, {0.0, 0.0, -sa, ca});
    ChartJet j;
    j.x = ch * A + sh * E;
    j.xv = p.drho * (sh * A + ch * E) + ch * p.dtau * dA;
    j.xu = sh * dE;
    j.xvv = p.ddrho * (sh * A + ch * E) + p.drho * p.drho * (ch * A + sh * E) +
            2.0 * p.drho * sh * p.dtau * dA + ch * (p.ddtau * dA + p.dtau * p.dtau * A);
    j.xuv = p.drho * ch * dE;
    j.xuu = -sh * E;
    const double inv = 1.0 / k;
    j.x *= inv; j.xu *= inv; j.xv *= inv; j.xuu *= inv; j.xuv *= inv; j.xvv *= inv;
    return j;
  };
  ParametricSurface surface(form, d, jet, "hyperbolic_catenoid", true);
  const double h_max = max_mean_curvature(surface, 500);
  if (!(h_max <= 1e-6))
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "hyperbolic catenoid failed the minimality oracle (|H| = %.3e)", h_max);
    throw Error(ErrorKind::construction, buf);
  }
  const AmbientVector pole = surface.point(0.0, 0.0);
  return finish("hyperbolic_catenoid", std::move(surface), pole, Vec2(0, 0));
}

CatalogSurface make_surface(const std::string& name, const SurfaceParams& given) {
  const CatalogEntry& entry = catalog_entry(name);
  const SurfaceParams p = resolve_params(entry, given);
  if (name == "plane") return make_plane(p.at("extent"));
  if (name == "plane_polar") return make_plane_polar(p.at("extent"));
  if (name == "catenoid") return make_catenoid(p.at("neck"), p.at("v_extent"));
  if (name == "enneper") return make_enneper(p.at("extent"));
  if (name == "helicoid") return make_helicoid(p.at("extent"));
  if (name == "h2_in_h3") return make_h2_in_h3(p.at("b"), p.at("s_max"));
  if (name == "hyperbolic_catenoid")
    return make_hyperbolic_catenoid(p.at("c"), p.at("w_max"), p.at("b"));
  if (name == "sphere") return make_sphere(p.at("radius"), p.at("pole_offset"));
  throw Error(ErrorKind::unknown_surface, name);
}

namespace {
double radical_inverse(unsigned i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}
}  // namespace

double max_mean_curvature(const ParametricSurface& surface, int samples) {
  const ParameterDomain& d = surface.domain();
  // keep away from collapsed edges where the chart degenerates
  const double span_v = d.v1 - d.v0;
  const double lo = d.v0 + (d.collapsed_v0 ? 1e-3 * span_v : 0.0);
  const double hi = d.v1 - (d.collapsed_v1 ? 1e-3 * span_v : 0.0);
  double worst = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double u = d.u0 + (d.u1 - d.u0) * radical_inverse(static_cast<unsigned>(i), 2);
    const double v = lo + (hi - lo) * radical_inverse(static_cast<unsigned>(i), 3);
    const SurfaceGeometry geo = geometry_at(surface, u, v);
    worst = std::max(worst, surface.form().norm(geo.mean_curvature));
  }
  return worst;
}

}  // namespace cosurf
