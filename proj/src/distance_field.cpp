#include <algorithm>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cosurf/errors.hpp"
#include "cosurf/extrinsic_domains.hpp"
#include "cosurf/parallel.hpp"
#include "quadrature.hpp"

namespace cosurf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::array<double, 3> cell_integrand(const ParametricSurface& surface, double u, double v) {
  const SurfaceGeometry geo = geometry_at(surface, u, v);
  const double a = geo.area_element();
  return {a, geo.norm_b_sq * a, geo.gauss_curvature * a};
}

// Newton on dr = 0 with a central-difference Jacobian of dr.
std::optional<CriticalPoint> refine_critical(const DistanceField& field, double u, double v) {
  const ParametricSurface& s = field.surface();
  const double hu = 1e-3 * field.du(), hv = 1e-3 * field.dv();
  Vec2 x(u, v);
  const Vec2 start = x;
  for (int it = 0; it < 30; ++it) {
    const RadialJet c = radial_jet(s, x[0], x[1], field.pole());
    const RadialJet up = radial_jet(s, x[0] + hu, x[1], field.pole());
    const RadialJet um = radial_jet(s, x[0] - hu, x[1], field.pole());
    const RadialJet vp = radial_jet(s, x[0], x[1] + hv, field.pole());
    const RadialJet vm = radial_jet(s, x[0], x[1] - hv, field.pole());
    Mat2 jac;
    jac.col(0) = (up.dr - um.dr) / (2.0 * hu);
    jac.col(1) = (vp.dr - vm.dr) / (2.0 * hv);
    const double det = jac.determinant();
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
    const Vec2 step = jac.inverse() * c.dr;
    x -= step;
    if (std::abs(x[0] - start[0]) > 3.0 * field.du() || std::abs(x[1] - start[1]) > 3.0 * field.dv())
      return std::nullopt;
    if (std::abs(step[0]) < 1e-13 * field.du() && std::abs(step[1]) < 1e-13 * field.dv()) break;
  }
  if (!s.domain().periodic_u && !(x[0] >= s.domain().u0 && x[0] <= s.domain().u1)) return std::nullopt;
  if (!s.domain().periodic_v && !(x[1] >= s.domain().v0 && x[1] <= s.domain().v1)) return std::nullopt;
  const RadialJet fin = radial_jet(s, x[0], x[1], field.pole());
  const double g = fin.norm_grad_tangent();
  if (!(g < 1e-7)) return std::nullopt;
  return CriticalPoint{x, fin.r, g};
}

// Foot point of the pole on the chart by Gauss-Newton on F(u,v) - pole,
// started at the closest node.
std::optional<Vec2> locate_pole(const DistanceField& field, int i0, int j0) {
  const ParametricSurface& s = field.surface();
  const SpaceForm& form = s.form();
  Vec2 x(field.u_at(i0), field.v_at(j0));
  for (int it = 0; it < 40; ++it) {
    const ChartJet jet = s.jet(x[0], x[1]);
    const AmbientVector d = form.tangent_part(jet.x, field.pole() - jet.x);
    Mat2 g;
    g << form.inner(jet.xu, jet.xu), form.inner(jet.xu, jet.xv), form.inner(jet.xu, jet.xv),
        form.inner(jet.xv, jet.xv);
    if (!(g.determinant() > 1e-14)) return std::nullopt;
    const Vec2 step = g.inverse() * Vec2(form.inner(jet.xu, d), form.inner(jet.xv, d));
    x += step;
    if (std::abs(x[0] - field.u_at(i0)) > 4.0 * field.du() ||
        std::abs(x[1] - field.v_at(j0)) > 4.0 * field.dv())
      return std::nullopt;
    if (step.norm() < 1e-14 * (1.0 + x.norm())) break;
  }
  const double r = extrinsic_distance(s, x[0], x[1], field.pole());
  if (!(r < 1e-9 * std::max(1.0, std::sqrt(field.pole().squaredNorm())))) return std::nullopt;
  return x;
}

}  // namespace

void DistanceField::require_regular(double t, double tol) const {
  for (const auto& c : critical_)
    if (std::abs(c.value - t) <= tol)
      throw Error(ErrorKind::critical_radius,
                  "radius " + std::to_string(t) + " is a critical value of r (" +
                      std::to_string(c.value) + ")");
}

DistanceField build_field(const ParametricSurface& surface, const AmbientVector& pole,
                          const GridSpec& spec) {
  if (spec.nu < 64 || spec.nv < 64) throw Error(ErrorKind::domain, "grid needs at least 64x64 nodes");
  if (!(spec.t_max > 0.0)) throw Error(ErrorKind::domain, "t_max must be positive");
  if (spec.boundary_nodes < 1 || spec.boundary_nodes > 5)
    throw Error(ErrorKind::domain, "boundary_nodes must lie in [1, 5]");
  const SpaceForm& form = surface.form();
  if (pole.size() != form.coordinate_count())
    throw Error(ErrorKind::invalid_point, "pole has the wrong number of coordinates");
  form.require_on_model(pole, 1e-9 * std::max(1.0, pole.squaredNorm()));

  DistanceField f;
  f.surface_ = std::make_shared<const ParametricSurface>(surface);
  f.pole_ = pole;
  f.spec_ = spec;
  const ParameterDomain& d = surface.domain();
  f.periodic_u_ = spec.periodic_u.value_or(d.periodic_u);
  f.periodic_v_ = spec.periodic_v.value_or(d.periodic_v);
  f.u0_ = d.u0;
  f.v0_ = d.v0;
  f.du_ = (d.u1 - d.u0) / (f.periodic_u_ ? spec.nu : spec.nu - 1);
  f.dv_ = (d.v1 - d.v0) / (f.periodic_v_ ? spec.nv : spec.nv - 1);

  const std::size_t nodes = static_cast<std::size_t>(spec.nu) * spec.nv;
  f.r_.assign(nodes, 0.0);
  f.grad_.assign(nodes, kNaN);
  parallel_for(static_cast<std::size_t>(spec.nv), spec.workers, [&](std::size_t j) {
    for (int i = 0; i < spec.nu; ++i) {
      const RadialJet rj = radial_jet(surface, f.u_at(i), f.v_at(static_cast<int>(j)), pole);
      const std::size_t k = f.index(i, static_cast<int>(j));
      f.r_[k] = rj.r;
      if (!std::isfinite(rj.r))
        throw Error(ErrorKind::invalid_point, "non-finite distance on the grid");
      if (rj.r > 1e-12) f.grad_[k] = rj.norm_grad_tangent();
    }
  });

  double bmin = std::numeric_limits<double>::infinity();
  if (!f.periodic_v_) {
    for (int i = 0; i < spec.nu; ++i) {
      if (!d.collapsed_v0) bmin = std::min(bmin, f.r(i, 0));
      if (!d.collapsed_v1) bmin = std::min(bmin, f.r(i, spec.nv - 1));
    }
  }
  if (!f.periodic_u_) {
    for (int j = 0; j < spec.nv; ++j) {
      bmin = std::min(bmin, f.r(0, j));
      bmin = std::min(bmin, f.r(spec.nu - 1, j));
    }
  }
  f.boundary_min_r_ = bmin;

  {
    const auto it = std::min_element(f.r_.begin(), f.r_.end());
    const auto k = static_cast<int>(it - f.r_.begin());
    const int i0 = k % spec.nu, j0 = k / spec.nu;
    if (*it < 1e-12) {
      f.pole_chart_ = Vec2(f.u_at(i0), f.v_at(j0));
    } else {
      f.pole_chart_ = locate_pole(f, i0, j0);
    }
  }
  if (!(bmin > spec.t_max))
    throw Error(ErrorKind::domain_too_small,
                "chart boundary reaches r = " + std::to_string(bmin) + " <= t_max = " +
                    std::to_string(spec.t_max));

  // cell quadrature cache
  const int cu = f.cells_u(), cv = f.cells_v();
  f.cells_.resize(static_cast<std::size_t>(cu) * cv);
  static const auto rule = detail::unit_rule<4>();
  parallel_for(static_cast<std::size_t>(cv), spec.workers, [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const int j1 = (j + 1) % spec.nv;
    for (int i = 0; i < cu; ++i) {
      const int i1 = (i + 1) % spec.nu;
      const double a = f.r(i, j), b = f.r(i1, j), c = f.r(i1, j1), e = f.r(i, j1);
      auto& cell = f.cells_[static_cast<std::size_t>(j) * cu + i];
      const double lo = std::min({a, b, c, e}), hi = std::max({a, b, c, e});
      cell.r_lo = lo;
      cell.r_hi = hi;
      cell.near_critical = false;
      cell.integral = {0.0, 0.0, 0.0};
      const double pad = 0.5 * (hi - lo);
      if (lo - pad > 1.01 * spec.t_max) continue;
      const double ua = f.u_at(i), va = f.v_at(j);
      for (const auto& [xu, wu] : rule)
        for (const auto& [xv, wv] : rule) {
          const auto val = cell_integrand(surface, ua + xu * f.du_, va + xv * f.dv_);
          const double w = wu * wv * f.du_ * f.dv_;
          for (int k = 0; k < 3; ++k) cell.integral[k] += w * val[k];
        }
    }
  });
  // critical points: node-level local minima of |grad^P r| below 0.2
  for (int j = 0; j < spec.nv; ++j)
    for (int i = 0; i < spec.nu; ++i) {
      const double g = f.norm_grad(i, j);
      if (!(g < 0.2) || f.r(i, j) < 1e-3) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          int ii = i + di, jj = j + dj;
          if (f.periodic_u_) ii = (ii + spec.nu) % spec.nu;
          if (f.periodic_v_) jj = (jj + spec.nv) % spec.nv;
          if (ii < 0 || ii >= spec.nu || jj < 0 || jj >= spec.nv) continue;
          const double gn = f.norm_grad(ii, jj);
          if (std::isfinite(gn) && gn < g) {
            minimum = false;
            break;
          }
        }
      if (!minimum) continue;
      const auto cp = refine_critical(f, f.u_at(i), f.v_at(j));
      if (!cp || cp->value < 1e-3) continue;
      const bool duplicate = std::any_of(f.critical_.begin(), f.critical_.end(), [&](const CriticalPoint& o) {
        return std::abs(o.value - cp->value) < 1e-9 && (o.uv - cp->uv).norm() < 2.0 * (f.du_ + f.dv_);
      });
      if (!duplicate) f.critical_.push_back(*cp);
    }
  // cells around critical points never take the fully-inside shortcut
  for (const auto& cp : f.critical_) {
    const int ci = static_cast<int>(std::floor((cp.uv[0] - f.u0_) / f.du_));
    const int cj = static_cast<int>(std::floor((cp.uv[1] - f.v0_) / f.dv_));
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        int ii = ci + di, jj = cj + dj;
        if (f.periodic_u_) ii = (ii % cu + cu) % cu;
        if (f.periodic_v_) jj = (jj % cv + cv) % cv;
        if (ii < 0 || ii >= cu || jj < 0 || jj >= cv) continue;
        f.cells_[static_cast<std::size_t>(jj) * cu + ii].near_critical = true;
      }
  }

  std::vector<std::size_t> order(f.cells_.size());
  std::iota(order.begin(), order.end(), 0);
  auto upper = [&](std::size_t k) {
    const auto& c = f.cells_[k];
    if (c.near_critical) return std::numeric_limits<double>::infinity();
    return c.r_hi + 0.5 * (c.r_hi - c.r_lo);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return upper(a) < upper(b); });
  f.sorted_upper_.resize(order.size());
  f.prefix_.assign(order.size() + 1, {0.0, 0.0, 0.0});
  for (std::size_t n = 0; n < order.size(); ++n) {
    f.sorted_upper_[n] = upper(order[n]);
    for (int k = 0; k < 3; ++k) f.prefix_[n + 1][k] = f.prefix_[n][k] + f.cells_[order[n]].integral[k];
  }

  return f;
}

}  // namespace cosurf
