#include "doctest.h"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "cosurf/catalog.hpp"
#include "cosurf/errors.hpp"
#include "cosurf/extrinsic_domains.hpp"
#include "cosurf/functionals.hpp"

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

// Components of {r >= t} on an independent fine grid, flood fill with the
// chart's periodicity. For the surfaces used here each one holds exactly one
// boundary curve of D_t.
int outside_components(const CatalogSurface& s, double t, int n) {
  const ParametricSurface& surf = s.surface;
  const ParameterDomain& dom = surf.domain();
  const bool pu = dom.periodic_u;
  const double hu = (dom.u1 - dom.u0) / (pu ? n : n - 1);
  const double hv = (dom.v1 - dom.v0) / (n - 1);
  std::vector<char> out(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      out[j * n + i] =
          extrinsic_distance(surf, dom.u0 + hu * i, dom.v0 + hv * j, s.default_pole) >= t;
  std::vector<int> label(out.size(), -1);
  int count = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!out[k] || label[k] >= 0) continue;
    std::queue<std::size_t> q;
    q.push(k);
    label[k] = count;
    while (!q.empty()) {
      const int i = static_cast<int>(q.front() % n), j = static_cast<int>(q.front() / n);
      q.pop();
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int m = 0; m < 4; ++m) {
        int a = i + di[m], b = j + dj[m];
        if (pu) a = (a + n) % n;
        if (a < 0 || a >= n || b < 0 || b >= n) continue;
        const std::size_t idx = static_cast<std::size_t>(b) * n + a;
        if (out[idx] && label[idx] < 0) {
          label[idx] = count;
          q.push(idx);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("plane disk area, length and single boundary") {
  const DistanceField f = field_for("plane", 8.0);
  const ExtrinsicBall b = extract_ball(f, 1.0);
  CHECK(b.area == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(b.boundary_length == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(b.boundary.size() == 1);
  CHECK(ends_count(f, 3.0) == 1);
  CHECK(f.pole_on_surface());
}

TEST_CASE("guard rejects charts that do not cover the ball") {
  const CatalogSurface s = make_surface("plane", {{"extent", 2.0}});
  GridSpec g;
  g.t_max = 8.0;
  try {
    build_field(s.surface, s.default_pole, g);
    FAIL("expected DomainTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain_too_small);
  }
  g.nu = 32;
  g.t_max = 1.0;
  CHECK_THROWS_AS(build_field(s.surface, s.default_pole, g), Error);
  CHECK_NOTHROW(field_for("catenoid", 5.0, 128));
}

TEST_CASE("totally geodesic plane: geodesic disk closed forms") {
  const DistanceField f = field_for("h2_in_h3", 2.0);
  const ExtrinsicBall b = extract_ball(f, 1.0);
  CHECK(b.area == doctest::Approx(2 * kPi * (std::cosh(1.0) - 1.0)).epsilon(1e-6));
  CHECK(b.boundary_length == doctest::Approx(2 * kPi * std::sinh(1.0)).epsilon(1e-6));
  CHECK(coarea_integral(b) == doctest::Approx(2 * kPi * std::sinh(1.0)).epsilon(1e-6));
}

TEST_CASE("boundary samples are orthonormal frames") {
  for (const char* name : {"catenoid", "enneper", "hyperbolic_catenoid", "sphere"}) {
    const double t = std::string(name) == "sphere" ? 0.95 : 3.0;
    const DistanceField f = field_for(name, t, 256);
    const ExtrinsicBall b = extract_ball(f, t);
    REQUIRE(!b.samples.empty());
    double worst = 0.0;
    for (const auto& smp : b.samples) {
      const Mat2& g = smp.frame.metric;
      worst = std::max({worst, std::abs(smp.tangent.dot(g * smp.normal)),
                        std::abs(smp.tangent.dot(g * smp.tangent) - 1.0),
                        std::abs(smp.normal.dot(g * smp.normal) - 1.0)});
    }
    INFO(name);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("catenoid has two boundary curves, Enneper one") {
  const CatalogSurface cat = make_surface("catenoid");
  const DistanceField f = field_for("catenoid", 5.0, 256);
  CHECK(ends_count(f, 5.0) == 2);
  CHECK(outside_components(cat, 5.0, 600) == 2);
  const CatalogSurface enn = make_surface("enneper", {{"extent", 6.0}});
  const DistanceField fe = field_for("enneper", 5.0, 256, {{"extent", 6.0}});
  CHECK(ends_count(fe, 5.0) == 1);
  CHECK(outside_components(enn, 5.0, 600) == 1);
}

TEST_CASE("co-area integral matches the area derivative") {
  SUBCASE("plane") {
    const ExtrinsicBall b = extract_ball(field_for("plane", 8.0), 2.0);
    CHECK(coarea_integral(b) == doctest::Approx(4 * kPi).epsilon(1e-6));
  }
  SUBCASE("catenoid") {
    const DistanceField f = field_for("catenoid", 5.0, 384);
    const double h = 1e-3;
    const double num =
        (ball_integrals(f, 3.0 + h).area - ball_integrals(f, 3.0 - h).area) / (2 * h);
    CHECK(coarea_integral(extract_ball(f, 3.0)) == doctest::Approx(num).epsilon(1e-3));
  }
}

TEST_CASE("critical scan") {
  const CriticalScan p = critical_scan(field_for("plane", 8.0), 0.5, 7.0);
  CHECK(p.min_norm_grad == doctest::Approx(1.0).epsilon(1e-9));

  const DistanceField f = field_for("catenoid", 5.0, 256);
  const CriticalScan near = critical_scan(f, 2.0, 3.0), far = critical_scan(f, 4.0, 5.0);
  CHECK(near.min_norm_grad > 0.0);
  CHECK(far.min_norm_grad > near.min_norm_grad);
  CHECK(far.min_norm_grad < 1.0);

  // the waist point opposite the pole is a saddle of r at distance 2
  const CriticalScan waist = critical_scan(f, 1.5, 2.5);
  CHECK(waist.min_norm_grad < 0.05);
  bool found = false;
  for (const auto& cp : f.critical_points())
    if (std::abs(cp.value - 2.0) < 1e-8 && std::abs(cp.uv[0] - kPi) < 1e-6 &&
        std::abs(cp.uv[1]) < 1e-6)
      found = true;
  CHECK(found);
  CHECK_THROWS_AS(extract_ball(f, 2.0), Error);
  CHECK_THROWS_AS(f.require_regular(2.0 + 1e-7), Error);
}

TEST_CASE("boundary csv dump") {
  const DistanceField f = field_for("plane", 8.0, 128);
  const ExtrinsicBall b = extract_ball(f, 1.0);
  std::ostringstream os;
  write_boundary_csv(os, f, b);
  const std::string s = os.str();
  CHECK(s.rfind("component,u,v,", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(b.samples.size()) + 1);
}

TEST_CASE("geodesic curvature of circles") {
  using big = boost::multiprecision::cpp_dec_float_50;
  SUBCASE("plane") {
    const DistanceField f = field_for("plane", 8.0);
    const ExtrinsicBall b = extract_ball(f, 2.0);
    for (const auto& smp : b.samples) {
      CHECK(geodesic_curvature_formula(f.surface().form(), smp) == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(geodesic_curvature_direct(f, 2.0, smp) == doctest::Approx(0.5).epsilon(1e-7));
    }
  }
  SUBCASE("totally geodesic plane") {
    const double oracle = static_cast<double>(cosh(big(1)) / sinh(big(1)));
    const DistanceField f = field_for("h2_in_h3", 2.0);
    const ExtrinsicBall b = extract_ball(f, 1.0);
    for (const auto& smp : b.samples) {
      CHECK(geodesic_curvature_formula(f.surface().form(), smp) == doctest::Approx(oracle).epsilon(1e-9));
      CHECK(geodesic_curvature_direct(f, 1.0, smp) == doctest::Approx(oracle).epsilon(1e-7));
    }
  }
  SUBCASE("catenoid cross-check") {
    const DistanceField f = field_for("catenoid", 3.0, 384);
    const ExtrinsicBall b = extract_ball(f, 2.5);
    CHECK(b.samples.size() >= 200);
    double gap = 0.0;
    for (const auto& smp : b.samples)
      gap = std::max(gap, std::abs(geodesic_curvature_formula(f.surface().form(), smp) -
                                   geodesic_curvature_direct(f, 2.5, smp)));
    CHECK(gap <= 1e-5);
  }
}

TEST_CASE("Gauss-Bonnet estimates") {
  CHECK(gauss_bonnet_chi(field_for("plane", 8.0), extract_ball(field_for("plane", 8.0), 3.0)).chi_hat ==
        doctest::Approx(1.0).epsilon(0.01));
  const DistanceField c = field_for("catenoid", 6.0, 384);
  const ChiEstimate cc = gauss_bonnet_chi(c, extract_ball(c, 6.0));
  CHECK(std::abs(cc.chi_hat) <= 0.01);
  CHECK(cc.nearest == 0);
  const DistanceField e = field_for("enneper", 6.0, 384, {{"extent", 6.0}});
  const ChiEstimate ce = gauss_bonnet_chi(e, extract_ball(e, 6.0));
  CHECK(std::abs(ce.chi_hat - 1.0) <= 0.02);
}

TEST_CASE("divergence identity sides") {
  SUBCASE("plane") {
    const DistanceField f = field_for("plane", 8.0);
    const Sides s = lemma31_sides(f, extract_ball(f, 2.0));
    CHECK(std::abs(s.lhs) <= 1e-12);
    CHECK(s.rhs == doctest::Approx(2 * kPi).epsilon(1e-6));
  }
  SUBCASE("totally geodesic plane") {
    const DistanceField f = field_for("h2_in_h3", 2.0);
    const Sides s = lemma31_sides(f, extract_ball(f, 1.0));
    const long double c = std::cosh(1.0L), sh = std::sinh(1.0L);
    const double oracle = static_cast<double>(2 * std::numbers::pi_v<long double> * (sh - c / sh * (c - 1)));
    CHECK(std::abs(s.lhs) <= 1e-12);
    CHECK(s.rhs == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(s.rhs > 0.0);
  }
  SUBCASE("catenoid") {
    const DistanceField f = field_for("catenoid", 4.0, 256);
    const Sides s = lemma31_sides(f, extract_ball(f, 4.0));
    CHECK(s.lhs > 0.0);
    CHECK(s.margin() >= -1e-6 * (1 + std::abs(s.rhs)));
  }
  SUBCASE("non-minimal") {
    const DistanceField f = field_for("sphere", 0.95);
    try {
      lemma31_sides(f, extract_ball(f, 0.95));
      FAIL("expected not_applicable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_applicable);
    }
  }
}

TEST_CASE("curvature inequality sides") {
  const DistanceField f = field_for("plane", 8.0);
  const ExtrinsicBall b = extract_ball(f, 2.0);
  const Sides s = prop32_sides(f, b, 1.0, 1, 0.0);
  // -2pi + (1/8) pi 4 + (1/2 - 1/4) 4 pi
  CHECK(s.lhs == doctest::Approx(-2 * kPi + kPi / 2 + kPi).epsilon(1e-6));
  CHECK(std::abs(s.rhs) <= 1e-12);
  CHECK_THROWS_AS(prop32_sides(f, b, 2.0, 1, 0.0), Error);
  CHECK_THROWS_AS(prop32_sides(f, b, 0.0, 1, 0.0), Error);

  const DistanceField h = field_for("h2_in_h3", 2.0);
  const Sides sh = prop32_sides(h, extract_ball(h, 2.0), 0.5, 1, 0.0);
  CHECK(sh.lhs <= 0.0);
  CHECK(std::abs(sh.rhs) <= 1e-12);
}

TEST_CASE("decay of the second fundamental form on the boundary") {
  const DistanceField c = field_for("catenoid", 6.0, 256);
  const double c2 = decay_scan(extract_ball(c, 2.5)), c4 = decay_scan(extract_ball(c, 4.0)),
               c6 = decay_scan(extract_ball(c, 6.0));
  CHECK(c2 > c4);
  CHECK(c4 > c6);
  const DistanceField h = field_for("helicoid", 6.0, 256);
  for (double t : {2.0, 4.0, 6.0}) CHECK(decay_scan(extract_ball(h, t)) >= 0.1);
  CHECK(decay_scan(extract_ball(field_for("plane", 8.0, 128), 3.0)) <= 1e-12);
}

TEST_CASE("radius series") {
  const DistanceField f = field_for("catenoid", 4.0, 256);
  const RadiusSeries s = build_series(f, {1.0, 2.0, 3.0, 4.0});
  REQUIRE(s.records.size() == 4);
  CHECK(s.records[1].skipped);  // critical value 2 at the waist
  CHECK(!s.records[2].skipped);
  CHECK(s.records[3].area > s.records[2].area);
  CHECK(s.records[3].total_b_sq >= s.records[2].total_b_sq);
  CHECK(s.records[3].ends == 2);
  CHECK(s.records[3].prop32.size() == 4);
  CHECK(std::abs(s.records[3].coarea - s.records[3].area_derivative) <= 1e-3 * s.records[3].coarea);
  CHECK_THROWS_AS(build_series(f, {2.0, 1.0}), Error);
  SeriesOptions bad;
  bad.alphas = {2.5};
  CHECK_THROWS_AS(build_series(f, {1.0}, bad), Error);
}
