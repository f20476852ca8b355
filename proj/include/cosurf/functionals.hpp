#pragma once

// Per-radius functionals of the exhaustion by extrinsic balls.

#include <map>
#include <string>
#include <vector>

#include "cosurf/extrinsic_domains.hpp"

namespace cosurf {

/// R(t): integral of |B|^2 over D_t.
double total_extrinsic_curvature(const ExtrinsicBall& ball);

/// k_g = -<nabla_e e, nu> from a local level-curve stencil at the sample:
/// neighbours at arc length +-delta (delta = cell size / 64) are projected
/// back onto {r = t}, de/ds is their central quotient and Christoffel
/// symbols come from metric differences.
double geodesic_curvature_direct(const DistanceField& field, double t, const BoundarySample& sample);
/// h_b(r) / |grad^P r| + <B(e,e), grad^perp r> / |grad^P r|, from the frame only.
double geodesic_curvature_formula(const SpaceForm& form, const BoundarySample& sample);

struct ChiEstimate {
  double chi_hat = 0.0;
  int nearest = 0;
  double residual = 0.0;  // |chi_hat - nearest|
  double integral_k = 0.0;
  double integral_kg = 0.0;
};

ChiEstimate gauss_bonnet_chi(const DistanceField& field, const ExtrinsicBall& ball);

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

/// lhs = int |grad^perp r|^2 / |grad^P r|, rhs = int 1/|grad^P r| - h_b(t) Vol(D_t).
/// Throws not_applicable for non-minimal surfaces.
Sides lemma31_sides(const DistanceField& field, const ExtrinsicBall& ball);

/// Second fundamental form inequality with f^2 = alpha h_b(t); `chi` is the
/// Euler characteristic of D_t and `r_prime` = R'(t).
Sides prop32_sides(const DistanceField& field, const ExtrinsicBall& ball, double alpha, int chi,
                   double r_prime);

/// max |B| over boundary samples.
double decay_scan(const ExtrinsicBall& ball);

/// Boundary integral of <B(e,e), grad^perp r / |grad^P r|>.
double boundary_b_term(const SpaceForm& form, const ExtrinsicBall& ball);

struct RadiusRecord {
  double t = 0.0;
  bool skipped = false;
  std::string skip_reason;

  double area = 0.0;
  double length = 0.0;
  double coarea = 0.0;
  double area_derivative = 0.0;  // central difference on a local stencil
  double total_b_sq = 0.0;       // R(t)
  double r_prime = 0.0;
  double total_gauss = 0.0;
  double total_kg = 0.0;
  ChiEstimate chi;
  int ends = 0;
  double min_norm_grad = 0.0;
  double max_b = 0.0;
  double b_term = 0.0;
  double ratio = 0.0;        // Vol(D_t) / Vol(B_t)
  double ratio_prime = 0.0;  // local central difference
  double kg_gap_max = 0.0;
  int kg_samples = 0;
  int samples = 0;
  bool minimal = false;
  Sides lemma31;
  std::map<double, Sides> prop32;  // keyed by alpha
};

struct SeriesOptions {
  std::vector<double> alphas{0.25, 0.5, 1.0, 1.5};
  /// Relative half-width of the local derivative stencil.
  double stencil = 1e-3;
  unsigned workers = 0;
};

struct RadiusSeries {
  std::vector<double> schedule;
  std::vector<RadiusRecord> records;
  double r0 = 0.0;  // from critical_scan
  CriticalScan scan;
};

/// Evaluates every functional at one radius. Critical radii are returned
/// as skipped records rather than thrown.
RadiusRecord evaluate_radius(const DistanceField& field, double t, const SeriesOptions& options,
                             unsigned workers = 1);

RadiusSeries build_series(const DistanceField& field, const std::vector<double>& schedule,
                          const SeriesOptions& options = {});

}  // namespace cosurf
