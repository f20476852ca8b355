#include "cosurf/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cosurf/errors.hpp"

namespace cosurf {

bool ParameterDomain::contains(double u, double v) const {
  const bool in_u = periodic_u || (u >= u0 && u <= u1);
  const bool in_v = periodic_v || (v >= v0 && v <= v1);
  return in_u && in_v;
}

ParametricSurface::ParametricSurface(SpaceForm form, ParameterDomain domain, JetFunction jet,
                                     std::string label, bool minimal)
    : form_(form), domain_(domain), jet_(std::move(jet)), label_(std::move(label)),
      minimal_(minimal) {}

ParametricSurface ParametricSurface::from_point_map(SpaceForm form, ParameterDomain domain,
                                                    PointFunction map, std::string label,
                                                    bool minimal) {
  const double scale = std::max(domain.u1 - domain.u0, domain.v1 - domain.v0);
  const double h1 = 1e-6 * scale;
  const double h2 = 1e-4 * scale;
  auto jet = [map = std::move(map), h1, h2](double u, double v) {
    auto d1 = [&](double h, int dir) -> AmbientVector {
      const double du = dir == 0 ? h : 0.0, dv = dir == 0 ? 0.0 : h;
      return (map(u + du, v + dv) - map(u - du, v - dv)) / (2.0 * h);
    };
    auto first = [&](int dir) -> AmbientVector {
      return (4.0 * d1(0.5 * h1, dir) - d1(h1, dir)) / 3.0;
    };
    const AmbientVector x = map(u, v);
    auto d2 = [&](double h, int i, int j) -> AmbientVector {
      if (i == j) {
        const double du = i == 0 ? h : 0.0, dv = i == 0 ? 0.0 : h;
        return (map(u + du, v + dv) - 2.0 * x + map(u - du, v - dv)) / (h * h);
      }
      return (map(u + h, v + h) - map(u + h, v - h) - map(u - h, v + h) + map(u - h, v - h)) /
             (4.0 * h * h);
    };
    auto second = [&](int i, int j) -> AmbientVector {
      return (4.0 * d2(0.5 * h2, i, j) - d2(h2, i, j)) / 3.0;
    };
    return ChartJet{x, first(0), first(1), second(0, 0), second(0, 1), second(1, 1)};
  };
  ParametricSurface s(form, domain, std::move(jet), std::move(label), minimal);
  s.analytic_ = false;
  return s;
}

AmbientVector SurfaceGeometry::push_forward(const Vec2& x) const {
  return x[0] * jet.xu + x[1] * jet.xv;
}

AmbientVector SurfaceGeometry::second_form_at(const Vec2& x) const {
  return x[0] * x[0] * second_form[0] + 2.0 * x[0] * x[1] * second_form[1] +
         x[1] * x[1] * second_form[2];
}

namespace {

Mat2 metric_of(const SpaceForm& form, const ChartJet& jet) {
  Mat2 g;
  g(0, 0) = form.inner(jet.xu, jet.xu);
  g(0, 1) = g(1, 0) = form.inner(jet.xu, jet.xv);
  g(1, 1) = form.inner(jet.xv, jet.xv);
  return g;
}

double det2(const Mat2& g) { return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0); }

Mat2 inverse2(const Mat2& g, double det) {
  Mat2 inv;
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return inv / det;
}

// second_form index for the symmetric pair (i, j)
constexpr int pair_index(int i, int j) { return i + j; }

}  // namespace

SurfaceGeometry geometry_at(const ParametricSurface& surface, double u, double v) {
  const SpaceForm& form = surface.form();
  SurfaceGeometry geo;
  geo.jet = surface.jet(u, v);
  geo.metric = metric_of(form, geo.jet);
  geo.metric_det = det2(geo.metric);
  if (!(geo.metric_det > 1e-14))
    throw Error(ErrorKind::immersion, "degenerate metric at (" + std::to_string(u) + ", " +
                                          std::to_string(v) + ")");
  geo.inverse_metric = inverse2(geo.metric, geo.metric_det);

  const AmbientVector* second[3] = {&geo.jet.xuu, &geo.jet.xuv, &geo.jet.xvv};
  for (int k = 0; k < 3; ++k) {
    // Covariant second derivative on the model, then drop the tangential part.
    const AmbientVector d = form.tangent_part(geo.jet.x, *second[k]);
    const Vec2 proj(form.inner(d, geo.jet.xu), form.inner(d, geo.jet.xv));
    const Vec2 c = geo.inverse_metric * proj;
    geo.second_form[k] = d - c[0] * geo.jet.xu - c[1] * geo.jet.xv;
  }
  const Mat2& gi = geo.inverse_metric;
  geo.mean_curvature = 0.5 * (gi(0, 0) * geo.second_form[0] + 2.0 * gi(0, 1) * geo.second_form[1] +
                              gi(1, 1) * geo.second_form[2]);

  double bsq = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          bsq += gi(i, k) * gi(j, l) *
                 form.inner(geo.second_form[pair_index(i, j)], geo.second_form[pair_index(k, l)]);
  geo.norm_b_sq = std::max(0.0, bsq);
  geo.gauss_curvature =
      form.curvature() + (form.inner(geo.second_form[0], geo.second_form[2]) -
                          form.inner(geo.second_form[1], geo.second_form[1])) /
                             geo.metric_det;
  return geo;
}

PointFrame frame_at(const ParametricSurface& surface, double u, double v,
                    const AmbientVector& pole) {
  const SpaceForm& form = surface.form();
  PointFrame frame;
  static_cast<SurfaceGeometry&>(frame) = geometry_at(surface, u, v);
  frame.r = form.distance(pole, frame.jet.x);
  frame.radial = form.radial_unit(pole, frame.jet.x);
  frame.dr = Vec2(form.inner(frame.radial, frame.jet.xu), form.inner(frame.radial, frame.jet.xv));
  frame.grad_tangent = frame.inverse_metric * frame.dr;
  const double tangent_sq = std::max(0.0, frame.dr.dot(frame.grad_tangent));
  frame.norm_grad_tangent = std::sqrt(tangent_sq);
  frame.grad_normal = frame.radial - frame.push_forward(frame.grad_tangent);
  frame.norm_grad_normal = form.norm(frame.grad_normal);
  return frame;
}

RadialJet radial_jet(const ParametricSurface& surface, double u, double v,
                     const AmbientVector& pole) {
  const SpaceForm& form = surface.form();
  const ChartJet jet = surface.jet(u, v);
  RadialJet out;
  out.r = form.distance(pole, jet.x);
  out.metric = metric_of(form, jet);
  if (out.r < 1e-12) return out;
  const AmbientVector n = form.radial_unit(pole, jet.x);
  out.dr = Vec2(form.inner(n, jet.xu), form.inner(n, jet.xv));
  return out;
}

double RadialJet::norm_grad_tangent() const {
  const double det = det2(metric);
  if (!(det > 1e-14)) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(std::max(0.0, dr.dot(inverse2(metric, det) * dr)));
}

double extrinsic_distance(const ParametricSurface& surface, double u, double v,
                          const AmbientVector& pole) {
  return surface.form().distance(pole, surface.point(u, v));
}

double gauss_equation_residual(const ParametricSurface& surface, double u, double v) {
  const SurfaceGeometry geo = geometry_at(surface, u, v);
  return std::abs(geo.gauss_curvature - (surface.form().curvature() - 0.5 * geo.norm_b_sq));
}

namespace {

Christoffel christoffel_from_metric_derivatives(const Mat2& inverse, const std::array<Mat2, 2>& dg) {
  // dg[l](i, j) = d_l g_ij
  Christoffel gamma;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += inverse(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

double edge_margin(const ParameterDomain& d, double x, bool u_direction) {
  if (u_direction ? d.periodic_u : d.periodic_v) return std::numeric_limits<double>::infinity();
  return u_direction ? std::min(x - d.u0, d.u1 - x) : std::min(x - d.v0, d.v1 - x);
}

}  // namespace

Christoffel christoffel(const ParametricSurface& surface, double u, double v, double step) {
  const SpaceForm& form = surface.form();
  const ParameterDomain& dom = surface.domain();
  constexpr double kMinStep = 1e-7;
  // On the hyperboloid g_ij carries absolute rounding ~eps |F_i|_E |F_j|_E,
  // which the difference quotient amplifies by 1/h far from the origin.
  const ChartJet centre = surface.jet(u, v);
  const Mat2 g0 = metric_of(form, centre);
  auto widened = [&](const AmbientVector& d, double gii) {
    const double c = std::max(1.0, d.squaredNorm() / gii);
    return step * std::pow(c, 0.4);
  };
  const double want_u = widened(centre.xu, g0(0, 0));
  const double want_v = widened(centre.xv, g0(1, 1));
  auto choose_step = [&](double margin, double want) {
    if (margin >= 2.0 * want) return want;
    if (margin >= 2.0 * kMinStep) return 0.5 * margin;
    throw Error(ErrorKind::domain, "Christoffel stencil does not fit inside the parameter domain");
  };
  const double hu = choose_step(edge_margin(dom, u, true), want_u);
  const double hv = choose_step(edge_margin(dom, v, false), want_v);

  auto g_at = [&](double uu, double vv) { return metric_of(form, surface.jet(uu, vv)); };
  auto central = [&](double h, int dir) -> Mat2 {
    const double du = dir == 0 ? h : 0.0, dv = dir == 0 ? 0.0 : h;
    return (g_at(u + du, v + dv) - g_at(u - du, v - dv)) / (2.0 * h);
  };
  std::array<Mat2, 2> dg;
  dg[0] = (4.0 * central(0.5 * hu, 0) - central(hu, 0)) / 3.0;
  dg[1] = (4.0 * central(0.5 * hv, 1) - central(hv, 1)) / 3.0;

  const double det = det2(g0);
  if (!(det > 1e-14)) throw Error(ErrorKind::immersion, "degenerate metric in Christoffel stencil");
  return christoffel_from_metric_derivatives(inverse2(g0, det), dg);
}

Christoffel christoffel_from_jet(const SpaceForm& form, const SurfaceGeometry& geo) {
  // Gamma^k_ij = g^kl <F_ij, F_l>; the position component of F_ij is
  // orthogonal to F_l on the hyperboloid.
  const AmbientVector* second[3] = {&geo.jet.xuu, &geo.jet.xuv, &geo.jet.xvv};
  Christoffel gamma;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const AmbientVector& d = *second[pair_index(i, j)];
      const Vec2 lowered(form.inner(d, geo.jet.xu), form.inner(d, geo.jet.xv));
      const Vec2 raised = geo.inverse_metric * lowered;
      gamma[0](i, j) = raised[0];
      gamma[1](i, j) = raised[1];
    }
  return gamma;
}

namespace {

struct DistanceDerivatives {
  double r = 0.0;
  Vec2 first = Vec2::Zero();
  Mat2 second = Mat2::Zero();
};

// Richardson-extrapolated central differences of r in parameter space, with
// steps chosen so each is ~1e-3 min(r, 1) in surface length.
DistanceDerivatives differentiate_distance(const ParametricSurface& surface, double u, double v,
                                           const AmbientVector& pole) {
  auto f = [&](double uu, double vv) { return extrinsic_distance(surface, uu, vv, pole); };
  DistanceDerivatives d;
  d.r = f(u, v);
  if (d.r < 1e-3)
    throw Error(ErrorKind::excluded_region, "finite-difference stencil too close to the pole");
  const Mat2 g = metric_of(surface.form(), surface.jet(u, v));
  const double phys = 1e-3 * std::min(d.r, 1.0);
  const double hu = phys / std::sqrt(g(0, 0));
  const double hv = phys / std::sqrt(g(1, 1));

  auto estimate = [&](double s) {
    const double a = hu * s, b = hv * s;
    const double fpp = f(u + a, v + b), fpm = f(u + a, v - b);
    const double fmp = f(u - a, v + b), fmm = f(u - a, v - b);
    const double fp0 = f(u + a, v), fm0 = f(u - a, v);
    const double f0p = f(u, v + b), f0m = f(u, v - b);
    DistanceDerivatives e;
    e.first = Vec2((fp0 - fm0) / (2.0 * a), (f0p - f0m) / (2.0 * b));
    e.second(0, 0) = (fp0 - 2.0 * d.r + fm0) / (a * a);
    e.second(1, 1) = (f0p - 2.0 * d.r + f0m) / (b * b);
    e.second(0, 1) = e.second(1, 0) = (fpp - fpm - fmp + fmm) / (4.0 * a * b);
    return e;
  };
  const DistanceDerivatives coarse = estimate(1.0);
  const DistanceDerivatives fine = estimate(0.5);
  d.first = (4.0 * fine.first - coarse.first) / 3.0;
  d.second = (4.0 * fine.second - coarse.second) / 3.0;
  return d;
}

Mat2 covariant_hessian(const DistanceDerivatives& d, const Christoffel& gamma) {
  Mat2 hess = d.second;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      hess(i, j) -= gamma[0](i, j) * d.first[0] + gamma[1](i, j) * d.first[1];
  return hess;
}

}  // namespace

double laplacian_r(const ParametricSurface& surface, double u, double v,
                   const AmbientVector& pole) {
  const DistanceDerivatives d = differentiate_distance(surface, u, v, pole);
  const Mat2 hess = covariant_hessian(d, christoffel(surface, u, v));
  const Mat2 g = metric_of(surface.form(), surface.jet(u, v));
  const Mat2 gi = inverse2(g, det2(g));
  return (gi.cwiseProduct(hess)).sum();
}

double laplacian_r_comparison(const SpaceForm& form, const PointFrame& frame) {
  const double tangent_sq = frame.norm_grad_tangent * frame.norm_grad_tangent;
  return (2.0 - tangent_sq) * sphere_mean_curvature(form, frame.r) +
         2.0 * form.inner(frame.radial, frame.mean_curvature);
}

double hessian_r(const ParametricSurface& surface, double u, double v, const AmbientVector& pole,
                 const Vec2& x) {
  const DistanceDerivatives d = differentiate_distance(surface, u, v, pole);
  const Mat2 hess = covariant_hessian(d, christoffel(surface, u, v));
  return x.dot(hess * x);
}

double hessian_r_comparison(const SpaceForm& form, const PointFrame& frame, const Vec2& x) {
  const double len_sq = x.dot(frame.metric * x);
  const double along = x.dot(frame.dr);
  return sphere_mean_curvature(form, frame.r) * (len_sq - along * along) +
         form.inner(frame.radial, frame.second_form_at(x));
}

}  // namespace cosurf
