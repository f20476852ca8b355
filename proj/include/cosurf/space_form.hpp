#pragma once

// Simply connected space forms K^n(b), b <= 0.
//
// b == 0 is modelled as R^n with the Euclidean dot product. b < 0 uses the
// upper sheet of the hyperboloid <x,x>_M = 1/b, x_0 > 0, in Minkowski space
// R^{n,1} with <x,y>_M = -x_0 y_0 + sum_i x_i y_i.

#include <Eigen/Core>

namespace cosurf {

inline constexpr int kMaxCoordinates = 6;

/// Coordinates of an ambient point or tangent vector (n entries for b = 0,
/// n + 1 for b < 0).
using AmbientVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxCoordinates, 1>;

enum class Model { euclidean, hyperboloid };

class SpaceForm {
 public:
  SpaceForm(double curvature, int dimension);

  double curvature() const noexcept { return curvature_; }
  int dimension() const noexcept { return dimension_; }
  Model model() const noexcept {
    return curvature_ == 0.0 ? Model::euclidean : Model::hyperboloid;
  }
  bool hyperbolic() const noexcept { return curvature_ < 0.0; }
  int coordinate_count() const noexcept { return hyperbolic() ? dimension_ + 1 : dimension_; }
  /// sqrt(-b); zero for the Euclidean model.
  double scale() const noexcept { return scale_; }

  double inner(const AmbientVector& x, const AmbientVector& y) const;
  /// Model norm of a tangent (spacelike) vector; negative squares clamp to 0.
  double norm(const AmbientVector& v) const;

  /// |<x,x>_M - 1/b| for the hyperboloid, 0 for R^n (size mismatch -> inf).
  double model_residual(const AmbientVector& x) const;
  /// Rescales x onto the hyperboloid sheet (identity for R^n).
  AmbientVector project_to_model(const AmbientVector& x) const;
  /// Throws invalid_point when the residual exceeds `tolerance`.
  void require_on_model(const AmbientVector& x, double tolerance = 1e-9) const;

  /// Canonical base point: the origin of R^n or (1/sqrt(-b), 0, ..., 0).
  AmbientVector origin() const;
  AmbientVector zero_vector() const;
  /// Component of v tangent to the model at x (v - b<v,x>x for b < 0).
  AmbientVector tangent_part(const AmbientVector& x, const AmbientVector& v) const;

  double distance(const AmbientVector& p, const AmbientVector& q) const;
  /// Unit gradient of r = dist(o, .) at x; throws pole_singularity at x == o.
  AmbientVector radial_unit(const AmbientVector& o, const AmbientVector& x) const;
  /// Point at distance `length` along the geodesic leaving x with unit
  /// tangent direction v.
  AmbientVector geodesic_step(const AmbientVector& x, const AmbientVector& v,
                              double length) const;

 private:
  double curvature_;
  int dimension_;
  double scale_;
};

/// h_b(t): mean curvature of the geodesic t-sphere, pointed inward.
double sphere_mean_curvature(const SpaceForm& form, double t);
/// Vol(B_t^{b,2}): area of the geodesic disk of radius t in K^2(b).
double disk_area(const SpaceForm& form, double t);
/// Vol(S_t^{b,1}): length of the geodesic circle of radius t in K^2(b).
double circle_length(const SpaceForm& form, double t);

/// acosh(1 + d) for d >= 0 without cancellation near d = 0.
double acosh1p(double d);

}  // namespace cosurf
