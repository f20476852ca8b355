#pragma once

// Theorem-level verdicts assembled from a radius series.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosurf/functionals.hpp"

namespace cosurf {

struct Tolerances {
  double growth_slack = 1e-9;
  double isoperimetric = 1e-6;
  double lemma31 = 1e-6;  // scaled by 1 + |rhs|
  double prop32 = 1e-6;
  double kg_gap = 1e-5;
  double coarea = 1e-3;  // relative
  double chi_residual = 0.05;
  double convergence = 1e-3;  // relative change of R over the last step
  double chern_osserman = 0.02;
  double gb_identity = 0.02;
  double equality = 0.03;
  double gb_nonnegative = 0.01;
  double gb_cauchy = 0.02;
  double gb_pole = 0.05;
};

struct VerdictRecord {
  std::string name;
  bool applicable = true;
  bool pass = false;
  bool hypothesis_violated = false;
  double margin = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  /// Per-radius residuals aligned with the schedule; NaN where not evaluated.
  std::vector<double> residuals;
  std::map<std::string, double> values;
  std::string message;
};

struct ConvergenceStatus {
  bool converged = false;
  bool divergent = false;
  double last_change = 0.0;  // |R(t_m) - R(t_{m-1})|
  std::vector<double> log_slopes;  // dR / d ln t between consecutive radii
  std::string status;
};

struct VerdictReport {
  std::string surface;
  std::string pole_label;
  AmbientVector pole;
  bool pole_on_surface = false;
  double curvature = 0.0;
  bool minimal = true;
  std::vector<double> schedule;
  std::vector<std::pair<double, std::string>> skipped;
  double r0 = 0.0;

  std::optional<int> chi;
  double sup_growth = std::numeric_limits<double>::quiet_NaN();
  bool growth_monotone = false;
  double r_infinity = std::numeric_limits<double>::quiet_NaN();
  ConvergenceStatus r_convergence;

  std::vector<double> gb_integrand;  // per radius, NaN where not evaluated
  std::optional<double> g_b;
  double g_b_spread = std::numeric_limits<double>::quiet_NaN();
  bool g_b_resolved = false;

  std::vector<VerdictRecord> verdicts;
  Tolerances tolerances;

  const VerdictRecord* find(const std::string& name) const;
  /// Every applicable verdict passes.
  bool all_pass() const;
  bool hypothesis_violated() const;
};

/// Vol(D_t) / Vol(B_t) in the totally geodesic plane. Throws not_applicable
/// when the pole is off the surface.
double growth_ratio(const DistanceField& field, double t);

/// length/area - circle_length/disk_area. Throws not_applicable for
/// non-minimal surfaces or off-surface poles.
double isoperimetric_check(const DistanceField& field, const ExtrinsicBall& ball);

/// h_b(t) Vol(B_t) (ratio)'(t) + boundary B-term. Throws not_applicable
/// unless the ambient curvature is negative.
double gb_integrand(const SpaceForm& form, const RadiusRecord& record);

ConvergenceStatus total_curvature_convergence(const RadiusSeries& series, double rel_tol);

/// Runs every verdict on the series.
VerdictReport assemble_report(const DistanceField& field, const RadiusSeries& series,
                              const Tolerances& tol = {}, const std::string& surface = {});

/// Chern-Osserman bound. margin = [R/4pi - sup growth] + chi.
VerdictRecord chern_osserman_inequality(const VerdictReport& report);
/// Hyperbolic equality with G_b; residual stored as the margin.
VerdictRecord chern_osserman_equality(const VerdictReport& report);
/// G_b from two poles on the same surface.
VerdictRecord gb_pole_independence(const VerdictReport& a, const VerdictReport& b);

}  // namespace cosurf
