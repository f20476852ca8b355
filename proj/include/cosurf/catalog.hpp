#pragma once

// Built-in surfaces with analytic partials.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosurf/immersion.hpp"

namespace cosurf {

using SurfaceParams = std::map<std::string, double>;

struct ReferenceValue {
  double value = 0.0;
  std::string provenance;  // how the value is known (closed form, topology, ...)
};

struct ParameterRange {
  std::string name;
  double default_value = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  bool minimal = true;
  std::vector<ParameterRange> params;
  std::optional<ReferenceValue> euler_characteristic;
  std::optional<ReferenceValue> total_curvature;  // integral of |B|^2
  std::optional<ReferenceValue> growth_limit;     // sup of Vol(D_t)/Vol(B_t)
};

struct CatalogSurface {
  std::string name;
  ParametricSurface surface;
  AmbientVector default_pole;
  std::optional<Vec2> default_pole_chart;  // set when the default pole lies on the chart
  CatalogEntry entry;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);

/// Builds a catalog surface; unknown keys or out-of-range params are errors.
CatalogSurface make_surface(const std::string& name, const SurfaceParams& params = {});

/// Neck radius rho_0 of the rotational minimal surface with first integral c:
/// sinh(rho_0) cosh(rho_0) = c.
double hyperbolic_catenoid_neck(double c);

/// Rotational minimal surface about a geodesic axis of H^3(b). The chart is
/// (theta, w) with theta periodic and w in [-w_max, w_max]; w = 0 is the neck.
CatalogSurface solve_hyperbolic_catenoid(double c, double w_max, double curvature = -1.0);

/// max |H| over `samples` deterministic points of the parameter domain.
double max_mean_curvature(const ParametricSurface& surface, int samples = 500);

}  // namespace cosurf
