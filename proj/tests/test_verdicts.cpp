#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cosurf/catalog.hpp"
#include "cosurf/errors.hpp"
#include "cosurf/verdicts.hpp"

using namespace cosurf;

namespace {

constexpr double kPi = std::numbers::pi;

DistanceField field_for(const std::string& name, double t_max, int n = 256,
                        const SurfaceParams& params = {}) {
  const CatalogSurface s = make_surface(name, params);
  GridSpec g;
  g.nu = n;
  g.nv = n;
  g.t_max = t_max;
  return build_field(s.surface, s.default_pole, g);
}

std::vector<double> geometric(double a, double b, int m) {
  std::vector<double> out;
  for (int k = 0; k < m; ++k) out.push_back(a * std::pow(b / a, k / double(m - 1)));
  return out;
}

// Series with only t and R filled in.
RadiusSeries synthetic(const std::vector<double>& t, double (*r)(double)) {
  RadiusSeries s;
  s.schedule = t;
  for (double x : t) {
    RadiusRecord rec;
    rec.t = x;
    rec.total_b_sq = r(x);
    s.records.push_back(rec);
  }
  return s;
}

}  // namespace

TEST_CASE("growth ratio") {
  const DistanceField p = field_for("plane", 8.0);
  CHECK(growth_ratio(p, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(growth_ratio(p, 5.0) == doctest::Approx(1.0).epsilon(1e-9));
  const DistanceField s = field_for("sphere", 0.95);
  try {
    growth_ratio(s, 0.9);
    FAIL("expected not_applicable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_applicable);
  }
}

TEST_CASE("isoperimetric margins") {
  const DistanceField p = field_for("plane", 8.0);
  for (double t : {1.0, 3.0, 6.0}) CHECK(std::abs(isoperimetric_check(p, extract_ball(p, t))) <= 1e-6);
  const DistanceField h = field_for("h2_in_h3", 4.0);
  for (double t : {1.0, 3.0}) CHECK(std::abs(isoperimetric_check(h, extract_ball(h, t))) <= 1e-6);
  const DistanceField c = field_for("catenoid", 6.0);
  // t = 2 is the waist saddle value, so the nearby regular radius 2.5 is used
  for (double t : {2.5, 4.0, 6.0}) CHECK(isoperimetric_check(c, extract_ball(c, t)) >= 0.0);
  const DistanceField s = field_for("sphere", 0.95);
  CHECK_THROWS_AS(isoperimetric_check(s, extract_ball(s, 0.9)), Error);
}

TEST_CASE("G_b integrand") {
  const DistanceField h = field_for("h2_in_h3", 4.0);
  const RadiusSeries s = build_series(h, {1.0, 2.0, 3.0});
  for (const auto& rec : s.records) CHECK(std::abs(gb_integrand(h.surface().form(), rec)) <= 1e-6);
  const DistanceField p = field_for("plane", 4.0, 128);
  const RadiusSeries sp = build_series(p, {1.0});
  CHECK_THROWS_AS(gb_integrand(p.surface().form(), sp.records[0]), Error);
}

TEST_CASE("total curvature convergence classification") {
  const auto t = geometric(0.5, 8.0, 24);
  SUBCASE("fast convergence") {
    const auto s = synthetic(t, [](double x) { return 8 * kPi * (1 - std::exp(-3 * x)); });
    const auto c = total_curvature_convergence(s, 1e-3);
    CHECK(c.converged);
    CHECK(!c.divergent);
  }
  SUBCASE("linear growth diverges") {
    const auto s = synthetic(t, [](double x) { return 7.5 * x; });
    const auto c = total_curvature_convergence(s, 1e-3);
    CHECK(!c.converged);
    CHECK(c.divergent);
  }
  SUBCASE("slow approach is unresolved, not divergent") {
    const auto s = synthetic(t, [](double x) { return 8 * kPi * (1 - 1 / (1 + x * x)); });
    const auto c = total_curvature_convergence(s, 1e-3);
    CHECK(!c.converged);
    CHECK(!c.divergent);
    CHECK(c.status == "limit not resolved at t_max");
  }
  SUBCASE("zero curvature") {
    const auto s = synthetic(t, [](double) { return 0.0; });
    CHECK(total_curvature_convergence(s, 1e-3).converged);
  }
}

TEST_CASE("plane report") {
  const DistanceField f = field_for("plane", 8.0);
  const VerdictReport r = assemble_report(f, build_series(f, geometric(0.5, 8.0, 8)));
  REQUIRE(r.chi);
  CHECK(*r.chi == 1);
  CHECK(r.all_pass());
  CHECK(!r.hypothesis_violated());
  CHECK(r.sup_growth == doctest::Approx(1.0).epsilon(1e-9));
  const VerdictRecord* co = r.find("chern_osserman_inequality");
  REQUIRE(co);
  CHECK(std::abs(co->margin) <= 1e-6);
  CHECK(!r.find("chern_osserman_equality")->applicable);
  for (const auto& v : r.verdicts) CHECK(v.applicable != std::isnan(v.margin));
}

TEST_CASE("totally geodesic plane report") {
  const DistanceField f = field_for("h2_in_h3", 8.0);
  const VerdictReport r = assemble_report(f, build_series(f, geometric(0.5, 8.0, 8)));
  REQUIRE(r.g_b);
  CHECK(std::abs(*r.g_b) <= 0.01);
  const VerdictRecord* eq = r.find("chern_osserman_equality");
  REQUIRE(eq);
  CHECK(eq->applicable);
  CHECK(eq->pass);
  CHECK(eq->margin <= 1e-6);
  CHECK(r.find("gb_identity")->pass);
  CHECK(r.all_pass());
}

TEST_CASE("helicoid is flagged, not passed") {
  const DistanceField f = field_for("helicoid", 8.0);
  const VerdictReport r = assemble_report(f, build_series(f, geometric(0.5, 8.0, 12)));
  CHECK(r.r_convergence.divergent);
  CHECK(r.hypothesis_violated());
  const VerdictRecord* co = r.find("chern_osserman_inequality");
  CHECK(co->hypothesis_violated);
  CHECK(!co->pass);
  CHECK(co->message.find("infinite total curvature") != std::string::npos);
}

TEST_CASE("non-minimal control excluded from minimal-only verdicts") {
  const DistanceField f = field_for("sphere", 1.15);
  const VerdictReport r = assemble_report(f, build_series(f, {0.85, 0.9, 0.95, 1.1, 1.15}));
  for (const char* name : {"growth_monotone", "isoperimetric", "lemma31", "prop32", "chern_osserman_inequality"}) {
    INFO(name);
    REQUIRE(r.find(name));
    CHECK(!r.find(name)->applicable);
  }
  CHECK(r.find("kg_identity")->applicable);
  CHECK(r.find("kg_identity")->pass);
}

TEST_CASE("pole independence comparison") {
  VerdictReport a, b;
  a.g_b = 1.0;
  b.g_b = 1.03;
  CHECK(gb_pole_independence(a, b).pass);
  b.g_b = 1.2;
  const VerdictRecord v = gb_pole_independence(a, b);
  CHECK(!v.pass);
  CHECK(v.margin == doctest::Approx(0.2));
  b.g_b.reset();
  CHECK(!gb_pole_independence(a, b).applicable);
}
