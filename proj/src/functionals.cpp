#include "cosurf/functionals.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cosurf/errors.hpp"
#include "cosurf/parallel.hpp"

namespace cosurf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_sample(const BoundarySample& smp) {
  if (!(smp.frame.norm_grad_tangent >= 1e-6))
    throw Error(ErrorKind::critical_radius, "boundary sample at a near-critical point of r");
}

Vec2 level_tangent(const RadialJet& rj) {
  const double det = rj.metric.determinant();
  const double ng = rj.norm_grad_tangent();
  return Vec2(-rj.dr[1], rj.dr[0]) / (std::sqrt(det) * ng);
}

}  // namespace

double total_extrinsic_curvature(const ExtrinsicBall& ball) { return ball.total_b_sq; }

double geodesic_curvature_direct(const DistanceField& field, double t, const BoundarySample& smp) {
  require_sample(smp);
  const ParametricSurface& s = field.surface();
  const PointFrame& fr = smp.frame;
  const double tol = 1e-14 * std::max(1.0, t);
  const Christoffel gamma = christoffel(s, smp.uv[0], smp.uv[1]);
  const Vec2& e = smp.tangent;

  // point on the level curve reached from the sample along +-e, its unit
  // tangent and signed chord length
  auto shoot = [&](double delta, double sign) {
    const Vec2 q = smp.uv + sign * delta * smp.tangent;
    double sh = 0.0;
    RadialJet rj = radial_jet(s, q[0], q[1], field.pole());
    for (int it = 0; it < 12; ++it) {
      const double val = rj.r - t;
      if (std::abs(val) <= tol) break;
      const double slope = rj.dr.dot(smp.normal);
      if (slope == 0.0) break;
      sh -= val / slope;
      const Vec2 x = q + sh * smp.normal;
      rj = radial_jet(s, x[0], x[1], field.pole());
    }
    const Vec2 d = q + sh * smp.normal - smp.uv;
    const Mat2 gm = 0.5 * (fr.metric + rj.metric);
    return std::make_pair(level_tangent(rj), sign * std::sqrt(d.dot(gm * d)));
  };
  auto curvature = [&](double delta) {
    const auto [e_plus, s_plus] = shoot(delta, 1.0);
    const auto [e_minus, s_minus] = shoot(delta, -1.0);
    Vec2 acc = (e_plus - e_minus) / (s_plus - s_minus);
    for (int k = 0; k < 2; ++k) acc[k] += e.dot(gamma[k] * e);
    return -acc.dot(fr.dr) / fr.norm_grad_tangent;
  };
  // The central quotient is second order in delta and one Richardson step
  // makes it fourth order. delta follows the grid cell so the gap keeps
  // tracking the resolution, and shrinks with |grad^P r| where level sets
  // bend tightly near saddles of r.
  const double delta = smp.cell_size / 8.0 * std::min(1.0, fr.norm_grad_tangent);
  return (4.0 * curvature(0.5 * delta) - curvature(delta)) / 3.0;
}

double geodesic_curvature_formula(const SpaceForm& form, const BoundarySample& smp) {
  require_sample(smp);
  const PointFrame& fr = smp.frame;
  const double h = sphere_mean_curvature(form, fr.r);
  const AmbientVector bee = fr.second_form_at(smp.tangent);
  return (h + form.inner(bee, fr.grad_normal)) / fr.norm_grad_tangent;
}

ChiEstimate gauss_bonnet_chi(const DistanceField& field, const ExtrinsicBall& ball) {
  ChiEstimate out;
  out.integral_k = ball.total_gauss;
  for (const auto& smp : ball.samples)
    out.integral_kg += smp.weight * geodesic_curvature_formula(field.surface().form(), smp);
  out.chi_hat = (out.integral_k + out.integral_kg) / kTwoPi;
  out.nearest = static_cast<int>(std::lround(out.chi_hat));
  out.residual = std::abs(out.chi_hat - out.nearest);
  return out;
}

Sides lemma31_sides(const DistanceField& field, const ExtrinsicBall& ball) {
  if (!field.surface().minimal())
    throw Error(ErrorKind::not_applicable, "the divergence identity needs a minimal surface");
  Sides out;
  for (const auto& smp : ball.samples) {
    require_sample(smp);
    const double perp = smp.frame.norm_grad_normal;
    out.lhs += smp.weight * perp * perp / smp.frame.norm_grad_tangent;
  }
  out.rhs = coarea_integral(ball) - sphere_mean_curvature(field.surface().form(), ball.t) * ball.area;
  return out;
}

Sides prop32_sides(const DistanceField& field, const ExtrinsicBall& ball, double alpha, int chi,
                   double r_prime) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw Error(ErrorKind::domain, "alpha must lie in (0, 2)");
  if (!field.surface().minimal())
    throw Error(ErrorKind::not_applicable, "the curvature inequality needs a minimal surface");
  const SpaceForm& form = field.surface().form();
  const double h = sphere_mean_curvature(form, ball.t);
  const double f2 = alpha * h;
  Sides out;
  out.lhs = -kTwoPi * chi + (form.curvature() + 0.5 * f2 * h) * ball.area +
            (h - 0.5 * f2) * coarea_integral(ball);
  out.rhs = 0.5 * ball.total_b_sq + r_prime / (2.0 * f2);
  return out;
}

double decay_scan(const ExtrinsicBall& ball) {
  double m = 0.0;
  for (const auto& smp : ball.samples) m = std::max(m, std::sqrt(smp.frame.norm_b_sq));
  return m;
}

double boundary_b_term(const SpaceForm& form, const ExtrinsicBall& ball) {
  double sum = 0.0;
  for (const auto& smp : ball.samples) {
    require_sample(smp);
    const auto& fr = smp.frame;
    sum += smp.weight * form.inner(fr.second_form_at(smp.tangent), fr.grad_normal) / fr.norm_grad_tangent;
  }
  return sum;
}

namespace {

// Central difference of radius -> (area, R, ratio) on a local stencil;
// one-sided second order when t + h would touch the chart boundary.
struct StencilDerivatives {
  double area = 0.0, r = 0.0, ratio = 0.0;
};

StencilDerivatives local_derivatives(const DistanceField& field, double t, double rel,
                                     unsigned workers) {
  const SpaceForm& form = field.surface().form();
  const double h = rel * t;
  auto values = [&](double x) {
    const BallIntegrals b = ball_integrals(field, x, workers);
    return std::array<double, 3>{b.area, b.total_b_sq, b.area / disk_area(form, x)};
  };
  std::array<double, 3> d{};
  const bool room = t + h < field.boundary_min_r() && t + h <= 1.01 * field.spec().t_max;
  if (room) {
    const auto p = values(t + h), m = values(t - h);
    for (int k = 0; k < 3; ++k) d[k] = (p[k] - m[k]) / (2.0 * h);
  } else {
    const auto c = values(t), m = values(t - h), mm = values(t - 2.0 * h);
    for (int k = 0; k < 3; ++k) d[k] = (3.0 * c[k] - 4.0 * m[k] + mm[k]) / (2.0 * h);
  }
  return {d[0], d[1], d[2]};
}

}  // namespace

RadiusRecord evaluate_radius(const DistanceField& field, double t, const SeriesOptions& options,
                             unsigned workers) {
  RadiusRecord rec;
  rec.t = t;
  rec.minimal = field.surface().minimal();
  const SpaceForm& form = field.surface().form();
  const double h = options.stencil * t;
  for (const auto& cp : field.critical_points())
    if (std::abs(cp.value - t) <= 2.0 * h + 1e-6) {
      rec.skipped = true;
      rec.skip_reason = "CriticalRadius: critical value " + std::to_string(cp.value) + " within the stencil";
      return rec;
    }
  ExtrinsicBall ball;
  try {
    ball = extract_ball(field, t, workers);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::critical_radius) throw;
    rec.skipped = true;
    rec.skip_reason = e.what();
    return rec;
  }
  rec.area = ball.area;
  rec.length = ball.boundary_length;
  rec.coarea = coarea_integral(ball);
  rec.total_b_sq = ball.total_b_sq;
  rec.total_gauss = ball.total_gauss;
  rec.ends = ends_count(ball);
  rec.min_norm_grad = ball.min_norm_grad;
  rec.max_b = decay_scan(ball);
  rec.b_term = boundary_b_term(form, ball);
  rec.ratio = ball.area / disk_area(form, t);
  rec.samples = static_cast<int>(ball.samples.size());

  const StencilDerivatives d = local_derivatives(field, t, options.stencil, workers);
  rec.area_derivative = d.area;
  rec.r_prime = d.r;
  rec.ratio_prime = d.ratio;

  for (const auto& smp : ball.samples) {
    const double kf = geodesic_curvature_formula(form, smp);
    const double kd = geodesic_curvature_direct(field, t, smp);
    rec.total_kg += smp.weight * kf;
    rec.kg_gap_max = std::max(rec.kg_gap_max, std::abs(kf - kd));
    ++rec.kg_samples;
  }
  rec.chi.integral_k = ball.total_gauss;
  rec.chi.integral_kg = rec.total_kg;
  rec.chi.chi_hat = (rec.chi.integral_k + rec.chi.integral_kg) / kTwoPi;
  rec.chi.nearest = static_cast<int>(std::lround(rec.chi.chi_hat));
  rec.chi.residual = std::abs(rec.chi.chi_hat - rec.chi.nearest);

  if (rec.minimal) {
    rec.lemma31 = lemma31_sides(field, ball);
    for (double a : options.alphas)
      rec.prop32[a] = prop32_sides(field, ball, a, rec.chi.nearest, rec.r_prime);
  }
  return rec;
}

RadiusSeries build_series(const DistanceField& field, const std::vector<double>& schedule,
                          const SeriesOptions& options) {
  for (std::size_t k = 1; k < schedule.size(); ++k)
    if (!(schedule[k] > schedule[k - 1]))
      throw Error(ErrorKind::config, "radius schedule must be strictly increasing");
  for (double a : options.alphas)
    if (!(a > 0.0 && a < 2.0)) throw Error(ErrorKind::domain, "alpha must lie in (0, 2)");
  RadiusSeries series;
  series.schedule = schedule;
  series.records.resize(schedule.size());
  parallel_for(schedule.size(), options.workers, [&](std::size_t k) {
    series.records[k] = evaluate_radius(field, schedule[k], options, 1);
  });
  if (!schedule.empty()) {
    series.scan = critical_scan(field, 0.0, schedule.back(), schedule);
    series.r0 = series.scan.recommended_r0;
  }
  return series;
}

}  // namespace cosurf
