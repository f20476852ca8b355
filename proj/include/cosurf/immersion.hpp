#pragma once

// Immersion calculus for charts F:(u,v) -> K^n(b).

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>

#include "cosurf/space_form.hpp"

namespace cosurf {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Position and exact first/second partials of a chart at one parameter point.
struct ChartJet {
  AmbientVector x, xu, xv, xuu, xuv, xvv;
};

struct ParameterDomain {
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
  bool periodic_u = false;
  bool periodic_v = false;
  /// Edges mapped to a single point (polar charts). They are not boundary of
  /// the surface and are skipped by the domain-covers-ball guard.
  bool collapsed_v0 = false;
  bool collapsed_v1 = false;

  bool contains(double u, double v) const;
};

class ParametricSurface {
 public:
  using JetFunction = std::function<ChartJet(double, double)>;
  using PointFunction = std::function<AmbientVector(double, double)>;

  ParametricSurface(SpaceForm form, ParameterDomain domain, JetFunction jet, std::string label,
                    bool minimal);

  /// Chart known only through point evaluation; partials come from
  /// Richardson-extrapolated central differences.
  static ParametricSurface from_point_map(SpaceForm form, ParameterDomain domain,
                                          PointFunction map, std::string label, bool minimal);

  const SpaceForm& form() const noexcept { return form_; }
  const ParameterDomain& domain() const noexcept { return domain_; }
  const std::string& label() const noexcept { return label_; }
  bool minimal() const noexcept { return minimal_; }
  bool analytic() const noexcept { return analytic_; }

  ChartJet jet(double u, double v) const { return jet_(u, v); }
  AmbientVector point(double u, double v) const { return jet_(u, v).x; }

 private:
  SpaceForm form_;
  ParameterDomain domain_;
  JetFunction jet_;
  std::string label_;
  bool minimal_;
  bool analytic_ = true;
};

/// Pole-independent geometry at a point of the surface.
struct SurfaceGeometry {
  ChartJet jet;
  Mat2 metric;
  Mat2 inverse_metric;
  double metric_det = 0.0;
  /// B(d_u,d_u), B(d_u,d_v), B(d_v,d_v): normal-valued, ambient coordinates.
  std::array<AmbientVector, 3> second_form;
  AmbientVector mean_curvature;  // H = trace_g(B) / 2
  double norm_b_sq = 0.0;
  double gauss_curvature = 0.0;

  double area_element() const { return std::sqrt(metric_det); }
  /// B(X,X) for a tangent vector with parameter components X.
  AmbientVector second_form_at(const Vec2& x) const;
  /// Ambient vector X^u F_u + X^v F_v.
  AmbientVector push_forward(const Vec2& x) const;
};

/// Per-point state including the split of the ambient radial gradient.
struct PointFrame : SurfaceGeometry {
  double r = 0.0;
  AmbientVector radial;         // grad^N r at the point
  Vec2 dr;                      // covector (d_u r, d_v r)
  Vec2 grad_tangent;            // contravariant components of grad^P r
  AmbientVector grad_normal;    // (grad^N r)^perp
  double norm_grad_tangent = 0.0;
  double norm_grad_normal = 0.0;
};

/// Distance, its parameter gradient and the metric; cheaper than a full frame.
struct RadialJet {
  double r = 0.0;
  Vec2 dr = Vec2::Zero();
  Mat2 metric = Mat2::Identity();

  /// |grad^P r|; NaN where the metric degenerates.
  double norm_grad_tangent() const;
};

/// 2x2x2 Christoffel symbols: gamma[k](i, j) = Gamma^k_ij.
using Christoffel = std::array<Mat2, 2>;

SurfaceGeometry geometry_at(const ParametricSurface& surface, double u, double v);
PointFrame frame_at(const ParametricSurface& surface, double u, double v,
                    const AmbientVector& pole);
RadialJet radial_jet(const ParametricSurface& surface, double u, double v,
                     const AmbientVector& pole);
double extrinsic_distance(const ParametricSurface& surface, double u, double v,
                          const AmbientVector& pole);

/// |K - (b - |B|^2/2)|; vanishes exactly when H = 0.
double gauss_equation_residual(const ParametricSurface& surface, double u, double v);

/// Christoffel symbols of the induced metric from central differences of g
/// with step `step` and one Richardson extrapolation.
Christoffel christoffel(const ParametricSurface& surface, double u, double v,
                        double step = 1e-5);
/// Reference route through the tangential part of the covariant second
/// derivative; used to cross-check the metric-difference route.
Christoffel christoffel_from_jet(const SpaceForm& form, const SurfaceGeometry& geometry);

/// Laplace-Beltrami of r by finite differences of the distance field.
double laplacian_r(const ParametricSurface& surface, double u, double v,
                   const AmbientVector& pole);
/// (2 - |grad^P r|^2) h_b(r) + 2 <grad^N r, H>.
double laplacian_r_comparison(const SpaceForm& form, const PointFrame& frame);

/// Hess^P r(X, X) by finite differences; X given in parameter components.
double hessian_r(const ParametricSurface& surface, double u, double v,
                 const AmbientVector& pole, const Vec2& x);
/// h_b(r)(|X|^2 - <X, grad^N r>^2) + <grad^N r, B(X,X)>.
double hessian_r_comparison(const SpaceForm& form, const PointFrame& frame, const Vec2& x);

}  // namespace cosurf
