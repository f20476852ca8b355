#include "cosurf/verdicts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cosurf/errors.hpp"

namespace cosurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

VerdictRecord not_applicable(const std::string& name, const std::string& why) {
  VerdictRecord v;
  v.name = name;
  v.applicable = false;
  v.message = why;
  return v;
}

// Records used for limit statements: evaluated and beyond R0.
std::vector<std::size_t> tail_indices(const RadiusSeries& s) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < s.records.size(); ++k)
    if (!s.records[k].skipped && s.records[k].t > s.r0) idx.push_back(k);
  return idx;
}

std::vector<std::size_t> evaluated(const RadiusSeries& s) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < s.records.size(); ++k)
    if (!s.records[k].skipped) idx.push_back(k);
  return idx;
}

// Per-radius check: residual r_k passes when r_k >= -tol_k.
template <class F>
VerdictRecord per_radius(const std::string& name, const RadiusSeries& s, double tol, F residual) {
  VerdictRecord v;
  v.name = name;
  v.tolerance = tol;
  v.residuals.assign(s.records.size(), kNaN);
  v.pass = true;
  double worst = std::numeric_limits<double>::infinity();
  int n = 0;
  for (std::size_t k : evaluated(s)) {
    const auto [res, scale] = residual(s.records[k]);
    v.residuals[k] = res;
    worst = std::min(worst, res);
    if (res < -tol * scale) v.pass = false;
    ++n;
  }
  v.margin = n ? worst : kNaN;
  if (n == 0) {
    v.applicable = false;
    v.message = "no evaluated radii";
  }
  return v;
}

// Per-radius error e_k; passes when max e_k <= tol.
template <class F>
VerdictRecord max_error(const std::string& name, const RadiusSeries& s, double tol, F error) {
  VerdictRecord v;
  v.name = name;
  v.tolerance = tol;
  v.residuals.assign(s.records.size(), kNaN);
  double worst = 0.0;
  int n = 0;
  for (std::size_t k : evaluated(s)) {
    v.residuals[k] = error(s.records[k]);
    worst = std::max(worst, v.residuals[k]);
    ++n;
  }
  v.margin = n ? worst : kNaN;
  v.pass = n > 0 && worst <= tol;
  if (n == 0) {
    v.applicable = false;
    v.message = "no evaluated radii";
  }
  return v;
}

}  // namespace

const VerdictRecord* VerdictReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

bool VerdictReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const VerdictRecord& v) { return !v.applicable || v.pass; });
}

bool VerdictReport::hypothesis_violated() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const VerdictRecord& v) { return v.hypothesis_violated; });
}

double growth_ratio(const DistanceField& field, double t) {
  if (!field.pole_on_surface())
    throw Error(ErrorKind::not_applicable, "growth ratio needs a pole on the surface");
  return ball_integrals(field, t).area / disk_area(field.surface().form(), t);
}

double isoperimetric_check(const DistanceField& field, const ExtrinsicBall& ball) {
  if (!field.surface().minimal())
    throw Error(ErrorKind::not_applicable, "isoperimetric comparison needs a minimal surface");
  if (!field.pole_on_surface())
    throw Error(ErrorKind::not_applicable, "isoperimetric comparison needs a pole on the surface");
  const SpaceForm& form = field.surface().form();
  return ball.boundary_length / ball.area - circle_length(form, ball.t) / disk_area(form, ball.t);
}

double gb_integrand(const SpaceForm& form, const RadiusRecord& rec) {
  if (!(form.curvature() < 0.0))
    throw Error(ErrorKind::not_applicable, "the G_b integrand is defined for negative curvature only");
  return sphere_mean_curvature(form, rec.t) * disk_area(form, rec.t) * rec.ratio_prime + rec.b_term;
}

ConvergenceStatus total_curvature_convergence(const RadiusSeries& series, double rel_tol) {
  ConvergenceStatus c;
  const auto idx = evaluated(series);
  if (idx.size() < 2) {
    c.status = "too few radii";
    return c;
  }
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const auto& a = series.records[idx[k - 1]];
    const auto& b = series.records[idx[k]];
    c.log_slopes.push_back((b.total_b_sq - a.total_b_sq) / std::log(b.t / a.t));
  }
  const double last = series.records[idx.back()].total_b_sq;
  c.last_change = std::abs(last - series.records[idx[idx.size() - 2]].total_b_sq);
  c.converged = c.last_change <= rel_tol * std::abs(last) || c.last_change <= 1e-12;
  if (!c.converged && c.log_slopes.size() >= 3) {
    const std::size_t m = c.log_slopes.size();
    c.divergent = c.log_slopes[m - 1] >= c.log_slopes[m - 2] && c.log_slopes[m - 2] >= c.log_slopes[m - 3] &&
                  c.log_slopes[m - 1] > 0.0;
  }
  c.status = c.converged ? "converged" : c.divergent ? "divergent" : "limit not resolved at t_max";
  return c;
}

VerdictRecord chern_osserman_inequality(const VerdictReport& r) {
  const std::string name = "chern_osserman_inequality";
  if (!r.minimal) return not_applicable(name, "surface is not minimal");
  if (!r.pole_on_surface) return not_applicable(name, "pole is off the surface");
  VerdictRecord v;
  v.name = name;
  v.tolerance = r.tolerances.chern_osserman;
  if (r.r_convergence.divergent) {
    v.hypothesis_violated = true;
    v.message = "hypothesis violated: infinite total curvature";
    v.values["last_change"] = r.r_convergence.last_change;
    return v;
  }
  if (!r.chi) {
    v.applicable = false;
    v.message = "Euler characteristic estimate did not stabilize";
    return v;
  }
  v.margin = r.r_infinity / (4.0 * kPi) - r.sup_growth + *r.chi;
  v.pass = v.margin >= -v.tolerance;
  v.values["R"] = r.r_infinity;
  v.values["sup_growth"] = r.sup_growth;
  v.values["chi"] = *r.chi;
  if (r.curvature == 0.0) v.values["equality_residual"] = std::abs(v.margin);
  v.message = r.r_convergence.converged ? "R converged" : r.r_convergence.status;
  return v;
}

VerdictRecord chern_osserman_equality(const VerdictReport& r) {
  const std::string name = "chern_osserman_equality";
  if (!(r.curvature < 0.0)) return not_applicable(name, "ambient space is not hyperbolic");
  if (!r.minimal) return not_applicable(name, "surface is not minimal");
  if (!r.pole_on_surface) return not_applicable(name, "pole is off the surface");
  if (r.r_convergence.divergent) {
    VerdictRecord v;
    v.name = name;
    v.hypothesis_violated = true;
    v.message = "hypothesis violated: infinite total curvature";
    return v;
  }
  if (!r.chi || !r.g_b) return not_applicable(name, "Euler characteristic or G_b unavailable");
  VerdictRecord v;
  v.name = name;
  v.tolerance = r.tolerances.equality;
  v.margin = std::abs(-*r.chi - (r.r_infinity / (4.0 * kPi) - r.sup_growth - *r.g_b / (2.0 * kPi)));
  const bool nonneg = *r.g_b >= -r.tolerances.gb_nonnegative;
  v.pass = v.margin <= v.tolerance && nonneg;
  v.values["G_b"] = *r.g_b;
  v.values["G_b_spread"] = r.g_b_spread;
  v.values["R"] = r.r_infinity;
  v.values["sup_growth"] = r.sup_growth;
  v.values["chi"] = *r.chi;
  if (!nonneg) v.message = "G_b negative";
  else if (!r.g_b_resolved) v.message = "limit not resolved at t_max (G_b tail spread " + fmt(r.g_b_spread) + ")";
  else v.message = "G_b tail converged";
  return v;
}

VerdictRecord gb_pole_independence(const VerdictReport& a, const VerdictReport& b) {
  const std::string name = "gb_pole_independence";
  if (!a.g_b || !b.g_b) return not_applicable(name, "G_b unavailable for one of the poles");
  VerdictRecord v;
  v.name = name;
  v.tolerance = std::min(a.tolerances.gb_pole, b.tolerances.gb_pole);
  v.margin = std::abs(*a.g_b - *b.g_b);
  v.pass = v.margin <= v.tolerance;
  v.values["G_b_a"] = *a.g_b;
  v.values["G_b_b"] = *b.g_b;
  v.message = a.pole_label + " vs " + b.pole_label;
  return v;
}

VerdictReport assemble_report(const DistanceField& field, const RadiusSeries& s, const Tolerances& tol,
                              const std::string& surface) {
  VerdictReport r;
  const SpaceForm& form = field.surface().form();
  r.surface = surface.empty() ? field.surface().label() : surface;
  r.pole = field.pole();
  r.pole_on_surface = field.pole_on_surface();
  r.curvature = form.curvature();
  r.minimal = field.surface().minimal();
  r.schedule = s.schedule;
  r.r0 = s.r0;
  r.tolerances = tol;
  for (const auto& rec : s.records)
    if (rec.skipped) r.skipped.emplace_back(rec.t, rec.skip_reason);

  const auto all = evaluated(s);
  const auto tail = tail_indices(s);

  // k_g identity and co-area consistency, every surface
  {
    VerdictRecord v = max_error("kg_identity", s, tol.kg_gap, [](const RadiusRecord& rec) {
      return rec.kg_gap_max;
    });
    int fewest = std::numeric_limits<int>::max();
    for (std::size_t k : all) fewest = std::min(fewest, s.records[k].kg_samples);
    if (!all.empty()) v.values["min_samples"] = fewest;
    r.verdicts.push_back(v);
  }
  r.verdicts.push_back(max_error("coarea", s, tol.coarea, [](const RadiusRecord& rec) {
    return std::abs(rec.coarea - rec.area_derivative) / rec.coarea;
  }));

  // Euler characteristic plateau beyond R0
  {
    VerdictRecord v;
    v.name = "gauss_bonnet";
    v.tolerance = tol.chi_residual;
    v.residuals.assign(s.records.size(), kNaN);
    for (std::size_t k : all) v.residuals[k] = s.records[k].chi.residual;
    if (tail.empty()) {
      v.applicable = false;
      v.message = "no evaluated radii beyond R0";
    } else {
      const int chi = s.records[tail.front()].chi.nearest;
      bool same = true;
      double worst = 0.0;
      for (std::size_t k : tail) {
        same = same && s.records[k].chi.nearest == chi;
        worst = std::max(worst, s.records[k].chi.residual);
      }
      v.margin = worst;
      v.pass = same && worst <= tol.chi_residual;
      v.values["chi"] = chi;
      v.message = same ? "constant beyond R0" : "estimate changes beyond R0";
      if (v.pass) r.chi = chi;
    }
    r.verdicts.push_back(v);
  }

  // growth ratio
  if (!all.empty()) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k : all) best = std::max(best, s.records[k].ratio);
    r.sup_growth = best;
  }
  if (!r.minimal || !r.pole_on_surface) {
    r.verdicts.push_back(not_applicable(
        "growth_monotone", !r.minimal ? "surface is not minimal" : "pole is off the surface"));
  } else {
    VerdictRecord v;
    v.name = "growth_monotone";
    v.tolerance = tol.growth_slack;
    v.residuals.assign(s.records.size(), kNaN);
    v.pass = true;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < all.size(); ++k) {
      const double d = s.records[all[k]].ratio - s.records[all[k - 1]].ratio;
      v.residuals[all[k]] = d;
      worst = std::min(worst, d);
      if (d < -tol.growth_slack) v.pass = false;
    }
    v.margin = all.size() > 1 ? worst : kNaN;
    r.growth_monotone = v.pass;
    if (v.pass && !all.empty()) r.sup_growth = s.records[all.back()].ratio;
    v.values["sup_growth"] = r.sup_growth;
    r.verdicts.push_back(v);
  }

  if (!r.minimal || !r.pole_on_surface) {
    r.verdicts.push_back(not_applicable(
        "isoperimetric", !r.minimal ? "surface is not minimal" : "pole is off the surface"));
  } else {
    r.verdicts.push_back(per_radius("isoperimetric", s, tol.isoperimetric, [&](const RadiusRecord& rec) {
      return std::pair{rec.length / rec.area - circle_length(form, rec.t) / disk_area(form, rec.t), 1.0};
    }));
  }

  if (!r.minimal) {
    r.verdicts.push_back(not_applicable("lemma31", "surface is not minimal"));
  } else {
    r.verdicts.push_back(per_radius("lemma31", s, tol.lemma31, [](const RadiusRecord& rec) {
      return std::pair{rec.lemma31.margin(), 1.0 + std::abs(rec.lemma31.rhs)};
    }));
  }
  {
    std::vector<double> alphas;
    for (std::size_t k : all)
      for (const auto& [a, sides] : s.records[k].prop32)
        if (std::find(alphas.begin(), alphas.end(), a) == alphas.end()) alphas.push_back(a);
    std::sort(alphas.begin(), alphas.end());
    if (!r.minimal) r.verdicts.push_back(not_applicable("prop32", "surface is not minimal"));
    for (double a : alphas)
      r.verdicts.push_back(per_radius("prop32_a" + fmt(a), s, tol.prop32, [a](const RadiusRecord& rec) {
        return std::pair{rec.prop32.at(a).margin(), 1.0};
      }));
  }

  // total curvature limit
  r.r_convergence = total_curvature_convergence(s, tol.convergence);
  if (!all.empty()) r.r_infinity = s.records[all.back()].total_b_sq;

  // hyperbolic tail quantities
  r.gb_integrand.assign(s.records.size(), kNaN);
  if (r.curvature < 0.0) {
    for (std::size_t k : all) r.gb_integrand[k] = gb_integrand(form, s.records[k]);
    if (!r.minimal) {
      r.verdicts.push_back(not_applicable("gb_identity", "surface is not minimal"));
    } else {
      VerdictRecord v;
      v.name = "gb_identity";
      v.tolerance = tol.gb_identity;
      v.residuals.assign(s.records.size(), kNaN);
      double worst = 0.0;
      for (std::size_t k : tail) {
        const auto& rec = s.records[k];
        const double rhs = 2.0 * kPi * rec.chi.chi_hat + 0.5 * rec.total_b_sq - 2.0 * kPi * rec.ratio;
        v.residuals[k] = std::abs(r.gb_integrand[k] - rhs);
        worst = std::max(worst, v.residuals[k]);
      }
      v.applicable = !tail.empty();
      v.margin = tail.empty() ? kNaN : worst;
      v.pass = worst <= tol.gb_identity;
      if (tail.empty()) v.message = "no evaluated radii beyond R0";
      r.verdicts.push_back(v);
    }
    if (tail.size() >= 3) {
      double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t m = tail.size() - 3; m < tail.size(); ++m) {
        const double g = r.gb_integrand[tail[m]];
        sum += g;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
      }
      r.g_b = sum / 3.0;
      r.g_b_spread = hi - lo;
      r.g_b_resolved = r.g_b_spread <= tol.gb_cauchy;
    }
  }

  r.verdicts.push_back(chern_osserman_inequality(r));
  r.verdicts.push_back(chern_osserman_equality(r));
  return r;
}

}  // namespace cosurf
