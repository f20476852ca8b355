#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "cosurf/errors.hpp"
#include "cosurf/space_form.hpp"
#include "doctest.h"

using namespace cosurf;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

double big_coth(double k, double t) {
  Big x = Big(k) * Big(t);
  Big c = boost::multiprecision::cosh(x) / boost::multiprecision::sinh(x);
  return static_cast<double>(Big(k) * c);
}

AmbientVector hyper_point(const SpaceForm& form, double s, double theta) {
  const double k = form.scale();
  AmbientVector x = form.zero_vector();
  x[0] = std::cosh(k * s) / k;
  x[1] = std::sinh(k * s) * std::cos(theta) / k;
  x[2] = std::sinh(k * s) * std::sin(theta) / k;
  return x;
}

}  // namespace

TEST_CASE("sphere mean curvature matches a high precision coth") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lb(-3.0, -0.01), lt(0.01, 6.0);
  for (int i = 0; i < 200; ++i) {
    const SpaceForm form(lb(rng), 3);
    const double t = lt(rng);
    CHECK(sphere_mean_curvature(form, t) == doctest::Approx(big_coth(form.scale(), t)).epsilon(1e-14));
  }
  CHECK(sphere_mean_curvature(SpaceForm(0.0, 3), 4.0) == doctest::Approx(0.25));
}

TEST_CASE("disk area is the integral of circle length") {
  for (double b : {0.0, -0.3, -1.0, -2.5}) {
    const SpaceForm form(b, 3);
    for (double t : {0.1, 1.0, 3.0}) {
      auto f = [&](double s) { return circle_length(form, s); };
      const double integral =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t);
      CHECK(disk_area(form, t) == doctest::Approx(integral).epsilon(1e-12));
    }
  }
}

TEST_CASE("volume identity b Vol(B) + h_b Vol(S) = 2 pi") {
  // Both terms grow like 2 pi cosh(kt); beyond kt ~ 6 their rounding alone
  // exceeds 1e-12 of 2 pi, so the wide range is judged against term size.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lb(-4.0, 0.0), unit(1e-6, 1.0);
  double worst = 0.0, worst_wide = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SpaceForm form(i % 10 == 0 ? 0.0 : lb(rng), 3);
    const double k = form.scale();
    const double t = k > 0.0 ? 6.0 * unit(rng) / k : 8.0 * unit(rng);
    const double lhs = form.curvature() * disk_area(form, t) +
                       sphere_mean_curvature(form, t) * circle_length(form, t);
    worst = std::max(worst, std::abs(lhs - 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi));

    const double tw = 12.0 * unit(rng) / std::max(k, 0.5);
    const double hs = sphere_mean_curvature(form, tw) * circle_length(form, tw);
    const double wide = form.curvature() * disk_area(form, tw) + hs;
    worst_wide = std::max(worst_wide, std::abs(wide - 2.0 * std::numbers::pi) / hs);
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_wide <= 1e-12);
}

TEST_CASE("hyperbolic distance agrees with the acosh closed form") {
  const SpaceForm form(-1.0, 3);
  const AmbientVector o = form.origin();
  for (double s : {1e-8, 1e-5, 0.01, 0.7, 3.0, 12.0}) {
    const AmbientVector x = hyper_point(form, s, 0.4);
    CHECK(form.model_residual(x) < 1e-9 * std::max(1.0, std::cosh(s) * std::cosh(s)));
    CHECK(form.distance(o, x) == doctest::Approx(s).epsilon(1e-10));
  }
  const SpaceForm scaled(-4.0, 3);
  const AmbientVector y = hyper_point(scaled, 1.3, 2.0);
  CHECK(scaled.distance(scaled.origin(), y) == doctest::Approx(1.3).epsilon(1e-12));
  // distance between two generic points from the Minkowski product in high precision
  const AmbientVector p = hyper_point(form, 0.8, 0.1), q = hyper_point(form, 1.9, 2.6);
  Big ip = -Big(p[0]) * Big(q[0]) + Big(p[1]) * Big(q[1]) + Big(p[2]) * Big(q[2]);
  CHECK(form.distance(p, q) == doctest::Approx(static_cast<double>(boost::multiprecision::acosh(-ip))).epsilon(1e-12));
}

TEST_CASE("geodesic step travels the requested distance") {
  const SpaceForm form(-0.5, 4);
  AmbientVector x = form.project_to_model([&] {
    AmbientVector v = form.zero_vector();
    v << 3.0, 0.4, -0.2, 0.9, 0.1;
    return v;
  }());
  AmbientVector dir = form.zero_vector();
  dir << 0.0, 1.0, 0.5, 0.0, -0.3;
  const AmbientVector y = form.geodesic_step(x, dir, 2.2);
  CHECK(form.model_residual(y) < 1e-9);
  CHECK(form.distance(x, y) == doctest::Approx(2.2).epsilon(1e-10));
  const AmbientVector u = form.radial_unit(x, y);
  CHECK(form.norm(u) == doctest::Approx(1.0));
  CHECK(std::abs(form.inner(u, y)) < 1e-9);
}

TEST_CASE("space form errors") {
  CHECK_THROWS_AS(SpaceForm(0.5, 3), Error);
  CHECK_THROWS_AS(SpaceForm(0.0, 2), Error);
  CHECK_THROWS_AS(disk_area(SpaceForm(0.0, 3), 0.0), Error);
  const SpaceForm form(-1.0, 3);
  AmbientVector bad = form.origin();
  bad[1] = 0.5;
  CHECK_THROWS_AS(form.require_on_model(bad), Error);
  try {
    form.radial_unit(form.origin(), form.origin());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pole_singularity);
  }
  CHECK(acosh1p(1e-6) == doctest::Approx(std::acosh(1.0 + 1e-6)).epsilon(1e-9));
}
