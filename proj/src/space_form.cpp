#include "cosurf/space_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cosurf/errors.hpp"

namespace cosurf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::invalid_point: return "invalid point";
    case ErrorKind::pole_singularity: return "pole singularity";
    case ErrorKind::immersion: return "immersion error";
    case ErrorKind::domain_too_small: return "DomainTooSmall";
    case ErrorKind::critical_radius: return "CriticalRadius";
    case ErrorKind::excluded_region: return "excluded region";
    case ErrorKind::not_applicable: return "not applicable";
    case ErrorKind::unknown_surface: return "unknown surface";
    case ErrorKind::construction: return "construction error";
    case ErrorKind::config: return "config error";
  }
  return "error";
}

SpaceForm::SpaceForm(double curvature, int dimension)
    : curvature_(curvature), dimension_(dimension), scale_(std::sqrt(std::max(0.0, -curvature))) {
  if (!(curvature <= 0.0))
    throw Error(ErrorKind::domain, "space forms with curvature b > 0 are not supported");
  if (dimension < 3 || dimension + 1 > kMaxCoordinates)
    throw Error(ErrorKind::domain, "ambient dimension must lie in [3, " +
                                       std::to_string(kMaxCoordinates - 1) + "]");
}

double SpaceForm::inner(const AmbientVector& x, const AmbientVector& y) const {
  double s = x.dot(y);
  if (hyperbolic()) s -= 2.0 * x[0] * y[0];
  return s;
}

double SpaceForm::norm(const AmbientVector& v) const {
  return std::sqrt(std::max(0.0, inner(v, v)));
}

double SpaceForm::model_residual(const AmbientVector& x) const {
  if (x.size() != coordinate_count()) return std::numeric_limits<double>::infinity();
  if (!hyperbolic()) return 0.0;
  if (!(x[0] > 0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(inner(x, x) - 1.0 / curvature_);
}

AmbientVector SpaceForm::project_to_model(const AmbientVector& x) const {
  if (!hyperbolic()) return x;
  const double q = inner(x, x);
  if (!(q < 0.0) || !(x[0] > 0.0))
    throw Error(ErrorKind::invalid_point, "vector is not future timelike");
  return x * (1.0 / (scale_ * std::sqrt(-q)));
}

void SpaceForm::require_on_model(const AmbientVector& x, double tolerance) const {
  const double res = model_residual(x);
  if (!(res <= tolerance))
    throw Error(ErrorKind::invalid_point,
                "point off the model manifold (residual " + std::to_string(res) + ")");
}

AmbientVector SpaceForm::origin() const {
  AmbientVector o = zero_vector();
  if (hyperbolic()) o[0] = 1.0 / scale_;
  return o;
}

AmbientVector SpaceForm::zero_vector() const {
  return AmbientVector::Zero(coordinate_count());
}

AmbientVector SpaceForm::tangent_part(const AmbientVector& x, const AmbientVector& v) const {
  if (!hyperbolic()) return v;
  return v - (curvature_ * inner(v, x)) * x;
}

double acosh1p(double d) {
  if (d <= 0.0) return 0.0;
  if (d <= 1e-4) return std::sqrt(2.0 * d) * (1.0 - d / 12.0 + 3.0 * d * d / 160.0);
  return std::log1p(d + std::sqrt(d * (d + 2.0)));
}

double SpaceForm::distance(const AmbientVector& p, const AmbientVector& q) const {
  const AmbientVector diff = q - p;
  if (!hyperbolic()) return diff.norm();
  // b<p,q> - 1, read off the product directly for far points and through
  // -b<p-q,p-q>/2 for close ones; each form cancels badly in the other regime.
  const double direct = curvature_ * inner(p, q) - 1.0;
  if (direct > 0.5) return acosh1p(direct) / scale_;
  const double excess = -0.5 * curvature_ * inner(diff, diff);
  return acosh1p(excess) / scale_;
}

AmbientVector SpaceForm::radial_unit(const AmbientVector& o, const AmbientVector& x) const {
  if (distance(o, x) < 1e-12) throw Error(ErrorKind::pole_singularity, "radial direction at the pole");
  AmbientVector w = tangent_part(x, x - o);
  return w / norm(w);
}

AmbientVector SpaceForm::geodesic_step(const AmbientVector& x, const AmbientVector& v,
                                       double length) const {
  const AmbientVector dir = tangent_part(x, v);
  const AmbientVector unit = dir / norm(dir);
  if (!hyperbolic()) return x + length * unit;
  const double a = scale_ * length;
  return std::cosh(a) * x + (std::sinh(a) / scale_) * unit;
}

namespace {
void require_positive_radius(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::domain, "radius must be positive");
}
}  // namespace

double sphere_mean_curvature(const SpaceForm& form, double t) {
  require_positive_radius(t);
  if (!form.hyperbolic()) return 1.0 / t;
  const double k = form.scale();
  return k / std::tanh(k * t);
}

double disk_area(const SpaceForm& form, double t) {
  require_positive_radius(t);
  if (!form.hyperbolic()) return std::numbers::pi * t * t;
  const double k = form.scale();
  const double half = std::sinh(0.5 * k * t);
  // cosh(kt) - 1 = 2 sinh^2(kt/2)
  return (2.0 * std::numbers::pi / (k * k)) * 2.0 * half * half;
}

double circle_length(const SpaceForm& form, double t) {
  require_positive_radius(t);
  if (!form.hyperbolic()) return 2.0 * std::numbers::pi * t;
  const double k = form.scale();
  return (2.0 * std::numbers::pi / k) * std::sinh(k * t);
}

}  // namespace cosurf
