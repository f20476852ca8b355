#pragma once

// Extrinsic balls D_t = {r < t} extracted from a parameter grid.

#include <array>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "cosurf/immersion.hpp"

namespace cosurf {

struct GridSpec {
  int nu = 512;
  int nv = 512;
  /// Largest radius that will be requested; checked by the domain guard.
  double t_max = 1.0;
  /// Override the chart's periodicity flags.
  std::optional<bool> periodic_u;
  std::optional<bool> periodic_v;
  /// Quadrature nodes per boundary segment.
  int boundary_nodes = 3;
  unsigned workers = 0;
};

/// Isolated critical point of r found by the grid scan.
struct CriticalPoint {
  Vec2 uv;
  double value = 0.0;        // r at the point
  double norm_grad = 0.0;    // |grad^P r| after refinement
};

class DistanceField {
 public:
  const ParametricSurface& surface() const noexcept { return *surface_; }
  const AmbientVector& pole() const noexcept { return pole_; }
  const GridSpec& spec() const noexcept { return spec_; }
  bool periodic_u() const noexcept { return periodic_u_; }
  bool periodic_v() const noexcept { return periodic_v_; }
  int nu() const noexcept { return spec_.nu; }
  int nv() const noexcept { return spec_.nv; }
  int cells_u() const noexcept { return periodic_u_ ? spec_.nu : spec_.nu - 1; }
  int cells_v() const noexcept { return periodic_v_ ? spec_.nv : spec_.nv - 1; }
  double du() const noexcept { return du_; }
  double dv() const noexcept { return dv_; }
  double u_at(int i) const noexcept { return u0_ + du_ * i; }
  double v_at(int j) const noexcept { return v0_ + dv_ * j; }

  double r(int i, int j) const { return r_[index(i, j)]; }
  /// |grad^P r| at a node; NaN at the pole and on collapsed edges.
  double norm_grad(int i, int j) const { return grad_[index(i, j)]; }
  /// Smallest r over boundary nodes (non-periodic, non-collapsed edges).
  double boundary_min_r() const noexcept { return boundary_min_r_; }
  const std::vector<CriticalPoint>& critical_points() const noexcept { return critical_; }
  /// Chart coordinates of the pole when it lies on the surface.
  const std::optional<Vec2>& pole_chart() const noexcept { return pole_chart_; }
  bool pole_on_surface() const noexcept { return pole_chart_.has_value(); }

  /// Throws critical_radius if t is within `tol` of a critical value.
  void require_regular(double t, double tol = 1e-6) const;

 private:
  friend DistanceField build_field(const ParametricSurface&, const AmbientVector&, const GridSpec&);
  friend struct BallExtractor;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * spec_.nu + i; }

  std::shared_ptr<const ParametricSurface> surface_;
  AmbientVector pole_;
  GridSpec spec_;
  bool periodic_u_ = false, periodic_v_ = false;
  double u0_ = 0.0, v0_ = 0.0, du_ = 0.0, dv_ = 0.0;
  std::vector<double> r_, grad_;
  double boundary_min_r_ = 0.0;
  std::vector<CriticalPoint> critical_;
  std::optional<Vec2> pole_chart_;

  // per-cell data for quadrature: node range of r and 4x4 Gauss-Legendre
  // integrals of sqrt(g), |B|^2 sqrt(g) and K sqrt(g).
  struct Cell {
    double r_lo, r_hi;
    bool near_critical;  // always treated as cut
    std::array<double, 3> integral;
  };
  std::vector<Cell> cells_;
  // cells sorted by the upper end of their padded r range, with prefix sums
  std::vector<double> sorted_upper_;
  std::vector<std::array<double, 3>> prefix_;
};

DistanceField build_field(const ParametricSurface& surface, const AmbientVector& pole,
                          const GridSpec& spec);

struct BoundarySample {
  Vec2 uv;
  double weight = 0.0;  // arc-length quadrature weight
  Vec2 tangent;         // e, parameter components, |e|_g = 1
  Vec2 normal;          // nu = grad^P r / |grad^P r|
  int component = 0;
  double cell_size = 0.0;  // g-length of the local grid cell
  PointFrame frame;
};

struct ExtrinsicBall {
  double t = 0.0;
  double area = 0.0;
  double total_b_sq = 0.0;  // integral of |B|^2 over D_t
  double total_gauss = 0.0;  // integral of K over D_t
  /// Closed polylines in (u, v); periodic coordinates are unwrapped so that
  /// consecutive vertices are close.
  std::vector<std::vector<Vec2>> boundary;
  double boundary_length = 0.0;
  std::vector<BoundarySample> samples;
  double min_norm_grad = 0.0;  // over boundary samples
};

/// `workers` overrides the field's worker count (0 keeps it).
ExtrinsicBall extract_ball(const DistanceField& field, double t, unsigned workers = 0);

struct BallIntegrals {
  double area = 0.0;
  double total_b_sq = 0.0;
  double total_gauss = 0.0;
};

/// Area-type integrals only. Accepts radii slightly past t_max (up to
/// 1.01 t_max, below the chart boundary) for derivative stencils.
BallIntegrals ball_integrals(const DistanceField& field, double t, unsigned workers = 0);

/// Integral of 1 / |grad^P r| over the boundary.
double coarea_integral(const ExtrinsicBall& ball);

struct CriticalScan {
  double min_norm_grad = 1.0;
  /// Largest r in (t_lo, t_hi) at a node with |grad^P r| <= 0.1; t_lo if none.
  double last_low_gradient = 0.0;
  /// Smallest scheduled radius beyond which the gradient stays above 0.1.
  double recommended_r0 = 0.0;
};

CriticalScan critical_scan(const DistanceField& field, double t_lo, double t_hi,
                           const std::vector<double>& schedule = {});

int ends_count(const DistanceField& field, double t);
int ends_count(const ExtrinsicBall& ball);

/// CSV dump of boundary samples: component,u,v,x0..,k_g (k_g column from `kg`
/// when given, else empty).
void write_boundary_csv(std::ostream& out, const DistanceField& field, const ExtrinsicBall& ball,
                        const std::vector<double>& kg = {});

}  // namespace cosurf
