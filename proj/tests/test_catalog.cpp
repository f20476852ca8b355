#include <cmath>

#include "cosurf/catalog.hpp"
#include "cosurf/errors.hpp"
#include "doctest.h"

using namespace cosurf;

TEST_CASE("catalog lists every surface with parameter ranges") {
  const auto& entries = catalog_entries();
  CHECK(entries.size() == 8);
  for (const auto& e : entries) {
    for (const auto& p : e.params) {
      CHECK(p.min <= p.default_value);
      CHECK(p.default_value <= p.max);
    }
  }
  CHECK(catalog_entry("catenoid").euler_characteristic->value == 0.0);
  CHECK_THROWS_AS(make_surface("costa"), Error);
  CHECK_THROWS_AS(make_surface("catenoid", {{"neck", -1.0}}), Error);
  CHECK_THROWS_AS(make_surface("catenoid", {{"bogus", 1.0}}), Error);
}

TEST_CASE("standard charts") {
  const auto cat = make_surface("catenoid");
  const auto x = cat.surface.point(0.5, 1.0);
  CHECK(x[0] == doctest::Approx(std::cosh(1.0) * std::cos(0.5)));
  CHECK(x[2] == doctest::Approx(1.0));
  CHECK(cat.surface.domain().periodic_u);
  const auto enn = make_surface("enneper");
  const auto y = enn.surface.point(0.5, 0.25);
  CHECK(y[1] == doctest::Approx(-(0.25 - 0.25 * 0.25 * 0.25 / 3.0 + 0.5 * 0.5 * 0.25)));
  const auto h2 = make_surface("h2_in_h3");
  for (double s : {0.5, 3.0}) CHECK(h2.surface.form().model_residual(h2.surface.point(1.0, s)) < 1e-9 * std::cosh(s) * std::cosh(s));
}

TEST_CASE("hyperbolic catenoid neck and model constraint") {
  for (double c : {0.1, 1.0, 4.0}) {
    const double rho = hyperbolic_catenoid_neck(c);
    CHECK(std::abs(std::sinh(rho) * std::cosh(rho) - c) <= 1e-10 * std::max(1.0, c));
  }
  CHECK(hyperbolic_catenoid_neck(2.0) > hyperbolic_catenoid_neck(1.0));
  CHECK(hyperbolic_catenoid_neck(8.0) > hyperbolic_catenoid_neck(2.0));
  CHECK_THROWS_AS(hyperbolic_catenoid_neck(0.0), Error);

  const auto s = solve_hyperbolic_catenoid(1.0, 6.0);
  const auto& form = s.surface.form();
  for (double w : {-5.0, 0.0, 2.5}) {
    const auto x = s.surface.point(0.7, w);
    CHECK(form.model_residual(x) < 1e-9 * std::max(1.0, x[0] * x[0]));
  }
  // distance from the axis point (cosh tau, sinh tau, 0, 0) is the Fermi radius
  const auto neck = s.surface.point(0.0, 0.0);
  AmbientVector axis = form.origin();
  CHECK(form.distance(axis, neck) == doctest::Approx(hyperbolic_catenoid_neck(1.0)).epsilon(1e-12));
  CHECK(max_mean_curvature(s.surface, 500) <= 1e-6);

  const auto scaled = solve_hyperbolic_catenoid(2.0, 6.0, -4.0);
  CHECK(max_mean_curvature(scaled.surface, 500) <= 1e-6);
}
