#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "cosurf/errors.hpp"
#include "cosurf/extrinsic_domains.hpp"
#include "cosurf/parallel.hpp"
#include "quadrature.hpp"

namespace cosurf {

namespace {

using Integrals = std::array<double, 3>;

Integrals integrand(const ParametricSurface& surface, double u, double v) {
  const SurfaceGeometry geo = geometry_at(surface, u, v);
  const double a = geo.area_element();
  return {a, geo.norm_b_sq * a, geo.gauss_curvature * a};
}

void accumulate(Integrals& into, const Integrals& x, double w) {
  for (int k = 0; k < 3; ++k) into[k] += w * x[k];
}

// Root of a scalar function on [a, b] with f(a), f(b) of opposite sign.
template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  const double scale = std::max(std::abs(a), std::abs(b)) + std::abs(b - a);
  auto tol = [scale](double lo, double hi) { return std::abs(hi - lo) <= 1e-15 * scale; };
  std::uintmax_t iters = 60;
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

struct Rect {
  double u0, u1, v0, v1;
};

}  // namespace

struct BallExtractor {
  const DistanceField& f;
  double t;
  const ParametricSurface& s;
  unsigned workers;

  BallExtractor(const DistanceField& field, double radius, unsigned w = 0)
      : f(field), t(radius), s(field.surface()), workers(w ? w : field.spec().workers) {}

  double phi(double u, double v) const { return extrinsic_distance(s, u, v, f.pole_) - t; }

  // ---- level-set tracing ------------------------------------------------

  int wrap_u(int i) const { return f.periodic_u_ ? (i % f.spec_.nu + f.spec_.nu) % f.spec_.nu : i; }
  int wrap_v(int j) const { return f.periodic_v_ ? (j % f.spec_.nv + f.spec_.nv) % f.spec_.nv : j; }
  double node_r(int i, int j) const { return f.r(wrap_u(i), wrap_v(j)); }

  // dir 0: edge (i,j)-(i+1,j); dir 1: edge (i,j)-(i,j+1)
  std::int64_t edge_id(int i, int j, int dir) const {
    const std::int64_t n = static_cast<std::int64_t>(f.spec_.nu) * f.spec_.nv;
    return dir * n + static_cast<std::int64_t>(wrap_v(j)) * f.spec_.nu + wrap_u(i);
  }

  Vec2 edge_vertex(int i, int j, int dir) const {
    i = wrap_u(i);
    j = wrap_v(j);
    const Vec2 a(f.u_at(i), f.v_at(j));
    const Vec2 step = dir == 0 ? Vec2(f.du_, 0.0) : Vec2(0.0, f.dv_);
    const double ra = node_r(i, j) - t;
    const double rb = (dir == 0 ? node_r(i + 1, j) : node_r(i, j + 1)) - t;
    double lo = 0.0, hi = 1.0;  // phi(lo) < 0 <= phi(hi) after orientation
    const bool rising = ra < 0.0;
    double lam = ra / (ra - rb);
    for (int it = 0; it < 5; ++it) {
      const Vec2 x = a + lam * step;
      const RadialJet rj = radial_jet(s, x[0], x[1], f.pole_);
      const double val = rj.r - t;
      if (std::abs(val) < 1e-10) break;
      if ((val < 0.0) == rising)
        lo = lam;
      else
        hi = lam;
      const double slope = rj.dr.dot(step);
      double next = slope != 0.0 ? lam - val / slope : 0.5 * (lo + hi);
      if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
      lam = next;
    }
    return a + lam * step;
  }

  std::vector<std::vector<Vec2>> trace() const {
    const int cu = f.cells_u(), cv = f.cells_v();
    std::vector<std::pair<std::int64_t, std::int64_t>> segments;
    std::unordered_map<std::int64_t, Vec2> vertex;
    auto vertex_of = [&](int i, int j, int dir) {
      const std::int64_t id = edge_id(i, j, dir);
      if (!vertex.count(id)) vertex.emplace(id, edge_vertex(i, j, dir));
      return id;
    };
    for (int j = 0; j < cv; ++j)
      for (int i = 0; i < cu; ++i) {
        const auto& cell = f.cells_[static_cast<std::size_t>(j) * cu + i];
        if (cell.r_lo >= t || cell.r_hi < t) continue;
        const bool in[4] = {node_r(i, j) < t, node_r(i + 1, j) < t, node_r(i + 1, j + 1) < t,
                            node_r(i, j + 1) < t};
        // edges: 0 bottom, 1 right, 2 top, 3 left (corner k to corner k+1)
        auto edge = [&](int k) {
          switch (k) {
            case 0: return vertex_of(i, j, 0);
            case 1: return vertex_of(i + 1, j, 1);
            case 2: return vertex_of(i, j + 1, 0);
            default: return vertex_of(i, j, 1);
          }
        };
        std::vector<int> cut;
        for (int k = 0; k < 4; ++k)
          if (in[k] != in[(k + 1) % 4]) cut.push_back(k);
        if (cut.size() == 2) {
          segments.emplace_back(edge(cut[0]), edge(cut[1]));
        } else if (cut.size() == 4) {
          const bool centre_in =
              phi(f.u_at(i) + 0.5 * f.du_, f.v_at(j) + 0.5 * f.dv_) < 0.0;
          if (centre_in == in[0]) {
            segments.emplace_back(edge(0), edge(1));
            segments.emplace_back(edge(2), edge(3));
          } else {
            segments.emplace_back(edge(3), edge(0));
            segments.emplace_back(edge(1), edge(2));
          }
        }
      }

    std::unordered_map<std::int64_t, std::array<int, 2>> incident;
    for (int k = 0; k < static_cast<int>(segments.size()); ++k)
      for (std::int64_t e : {segments[k].first, segments[k].second}) {
        auto [it, fresh] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
        (it->second[0] < 0 ? it->second[0] : it->second[1]) = k;
      }

    const ParameterDomain& d = s.domain();
    const double lu = d.u1 - d.u0, lv = d.v1 - d.v0;
    auto unwrap = [&](Vec2 p, const Vec2& prev) {
      if (f.periodic_u_) p[0] += lu * std::round((prev[0] - p[0]) / lu);
      if (f.periodic_v_) p[1] += lv * std::round((prev[1] - p[1]) / lv);
      return p;
    };

    std::vector<char> used(segments.size(), 0);
    std::vector<std::vector<Vec2>> curves;
    for (std::size_t k0 = 0; k0 < segments.size(); ++k0) {
      if (used[k0]) continue;
      used[k0] = 1;
      const std::int64_t start = segments[k0].first;
      std::int64_t cur = segments[k0].second;
      std::vector<Vec2> pts{vertex.at(start)};
      pts.push_back(unwrap(vertex.at(cur), pts.back()));
      int prev = static_cast<int>(k0);
      bool closed = false;
      for (;;) {
        if (cur == start) {
          closed = true;
          break;
        }
        const auto& inc = incident.at(cur);
        const int next = inc[0] == prev ? inc[1] : inc[0];
        if (next < 0 || used[next]) break;
        used[next] = 1;
        cur = segments[next].first == cur ? segments[next].second : segments[next].first;
        pts.push_back(unwrap(vertex.at(cur), pts.back()));
        prev = next;
      }
      if (!closed)
        throw Error(ErrorKind::domain_too_small,
                    "level curve r = " + std::to_string(t) + " leaves the chart");
      curves.push_back(std::move(pts));
    }
    return curves;
  }

  // ---- boundary quadrature ----------------------------------------------

  std::vector<BoundarySample> samples(const std::vector<std::vector<Vec2>>& curves) const {
    struct Job {
      int component;
      Vec2 a, b;
    };
    std::vector<Job> jobs;
    for (int c = 0; c < static_cast<int>(curves.size()); ++c)
      for (std::size_t k = 0; k + 1 < curves[c].size(); ++k)
        if ((curves[c][k + 1] - curves[c][k]).norm() > 1e-14 * (1.0 + curves[c][k].norm()))
          jobs.push_back({c, curves[c][k], curves[c][k + 1]});

    const int m = f.spec_.boundary_nodes;
    std::vector<std::pair<double, double>> rule;
    switch (m) {
      case 1: rule.assign({{0.5, 1.0}}); break;
      case 2: { auto r = detail::unit_rule<2>(); rule.assign(r.begin(), r.end()); break; }
      case 3: { auto r = detail::unit_rule<3>(); rule.assign(r.begin(), r.end()); break; }
      case 4: { auto r = detail::unit_rule<4>(); rule.assign(r.begin(), r.end()); break; }
      default: { auto r = detail::unit_rule<5>(); rule.assign(r.begin(), r.end()); break; }
    }
    std::vector<BoundarySample> out(jobs.size() * rule.size());
    const double tol = 1e-13 * std::max(1.0, t);
    parallel_for(jobs.size(), workers, [&](std::size_t n) {
      const Job& job = jobs[n];
      const Vec2 delta = job.b - job.a;
      const Vec2 perp(-delta[1], delta[0]);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto [lam, w] = rule[q];
        const Vec2 base = job.a + lam * delta;
        double sh = 0.0;
        RadialJet rj = radial_jet(s, base[0], base[1], f.pole_);
        for (int it = 0; it < 12; ++it) {
          const double val = rj.r - t;
          if (std::abs(val) <= tol) break;
          const double slope = rj.dr.dot(perp);
          if (slope == 0.0) break;
          sh -= val / slope;
          const Vec2 p = base + sh * perp;
          rj = radial_jet(s, p[0], p[1], f.pole_);
        }
        const Vec2 p = base + sh * perp;
        const double denom = rj.dr.dot(perp);
        const double dsh = denom != 0.0 ? -rj.dr.dot(delta) / denom : 0.0;
        const Vec2 tangent = delta + dsh * perp;

        BoundarySample& smp = out[n * rule.size() + q];
        smp.uv = p;
        smp.component = job.component;
        smp.frame = frame_at(s, p[0], p[1], f.pole_);
        const PointFrame& fr = smp.frame;
        smp.weight = w * std::sqrt(std::max(0.0, tangent.dot(fr.metric * tangent)));
        const double ng = fr.norm_grad_tangent;
        if (ng > 0.0) {
          smp.normal = fr.grad_tangent / ng;
          const double root_det = std::sqrt(fr.metric_det);
          smp.tangent = Vec2(-fr.dr[1], fr.dr[0]) / (root_det * ng);
        } else {
          smp.normal = Vec2::Zero();
          smp.tangent = Vec2::Zero();
        }
        smp.cell_size = std::min(std::sqrt(fr.metric(0, 0)) * f.du_, std::sqrt(fr.metric(1, 1)) * f.dv_);
      }
    });
    return out;
  }

  // ---- area-type integrals ----------------------------------------------

  Integrals full(const Rect& r) const {
    static const auto rule = detail::unit_rule<4>();
    Integrals acc{0.0, 0.0, 0.0};
    const double w0 = (r.u1 - r.u0) * (r.v1 - r.v0);
    for (const auto& [xu, wu] : rule)
      for (const auto& [xv, wv] : rule)
        accumulate(acc, integrand(s, r.u0 + xu * (r.u1 - r.u0), r.v0 + xv * (r.v1 - r.v0)), wu * wv * w0);
    return acc;
  }

  // Height-function quadrature when r is monotone along one parameter
  // direction over the rectangle; returns false when it is not.
  bool graph_quadrature(const Rect& r, Integrals& acc) const {
    const Vec2 pts[5] = {{r.u0, r.v0}, {r.u1, r.v0}, {r.u1, r.v1}, {r.u0, r.v1},
                         {0.5 * (r.u0 + r.u1), 0.5 * (r.v0 + r.v1)}};
    const double ext[2] = {r.u1 - r.u0, r.v1 - r.v0};
    Vec2 grads[5];
    for (int k = 0; k < 5; ++k) {
      const RadialJet rj = radial_jet(s, pts[k][0], pts[k][1], f.pole_);
      if (rj.r < 1e-12) return false;
      grads[k] = Vec2(rj.dr[0] * ext[0], rj.dr[1] * ext[1]);
      if (k == 4) {
        // level curves bend on the scale t |grad^P r|; larger cells are split first
        const double diam = std::max(std::sqrt(rj.metric(0, 0)) * ext[0], std::sqrt(rj.metric(1, 1)) * ext[1]);
        const double ng = rj.norm_grad_tangent();
        if (!(diam <= 0.125 * t * std::min(1.0, ng))) return false;
      }
    }
    const int y = std::abs(grads[4][1]) >= std::abs(grads[4][0]) ? 1 : 0;
    const double sign = grads[4][y] > 0.0 ? 1.0 : -1.0;
    for (const Vec2& g : grads) {
      if (!(g[y] * sign > 0.0)) return false;
      if (std::abs(g[y]) < 0.25 * g.cwiseAbs().maxCoeff()) return false;
    }
    const int x = 1 - y;
    const double xa = x == 0 ? r.u0 : r.v0, xb = x == 0 ? r.u1 : r.v1;
    const double ya = y == 0 ? r.u0 : r.v0, yb = y == 0 ? r.u1 : r.v1;
    auto at = [&](double xx, double yy) { return x == 0 ? phi(xx, yy) : phi(yy, xx); };

    std::vector<double> breaks{xa, xb};
    for (double yy : {ya, yb}) {
      const double fa = at(xa, yy), fb = at(xb, yy);
      if ((fa < 0.0) != (fb < 0.0))
        breaks.push_back(bracketed_root([&](double xx) { return at(xx, yy); }, xa, xb, fa, fb));
    }
    std::sort(breaks.begin(), breaks.end());

    static const auto rule = detail::unit_rule<4>();
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const double p = breaks[b], q = breaks[b + 1];
      if (q - p <= 0.0) continue;
      for (const auto& [xs, wx] : rule) {
        const double xx = p + xs * (q - p);
        const double fa = at(xx, ya), fb = at(xx, yb);
        double lo = ya, hi = yb;
        if (fa >= 0.0 && fb >= 0.0) continue;
        if ((fa < 0.0) != (fb < 0.0)) {
          const double root = bracketed_root([&](double yy) { return at(xx, yy); }, ya, yb, fa, fb);
          if (fa < 0.0)
            hi = root;
          else
            lo = root;
        }
        for (const auto& [ys, wy] : rule) {
          const double yy = lo + ys * (hi - lo);
          const Integrals val = x == 0 ? integrand(s, xx, yy) : integrand(s, yy, xx);
          accumulate(acc, val, wx * wy * (q - p) * (hi - lo));
        }
      }
    }
    return true;
  }

  void cut_quadrature(const Rect& r, int depth, Integrals& acc) const {
    if (graph_quadrature(r, acc)) return;
    const double um = 0.5 * (r.u0 + r.u1), vm = 0.5 * (r.v0 + r.v1);
    const double vals[5] = {phi(r.u0, r.v0), phi(r.u1, r.v0), phi(r.u1, r.v1), phi(r.u0, r.v1),
                            phi(um, vm)};
    bool all_in = true, all_out = true;
    for (double v : vals) {
      all_in = all_in && v < 0.0;
      all_out = all_out && v >= 0.0;
    }
    if (depth > 0 && all_out) return;
    if (depth > 0 && all_in) {
      const Integrals full_val = full(r);
      accumulate(acc, full_val, 1.0);
      return;
    }
    if (depth >= 6) {
      if (vals[4] < 0.0) accumulate(acc, integrand(s, um, vm), (r.u1 - r.u0) * (r.v1 - r.v0));
      return;
    }
    cut_quadrature({r.u0, um, r.v0, vm}, depth + 1, acc);
    cut_quadrature({um, r.u1, r.v0, vm}, depth + 1, acc);
    cut_quadrature({r.u0, um, vm, r.v1}, depth + 1, acc);
    cut_quadrature({um, r.u1, vm, r.v1}, depth + 1, acc);
  }

  Integrals area_integrals() const {
    const auto n_in = static_cast<std::size_t>(
        std::lower_bound(f.sorted_upper_.begin(), f.sorted_upper_.end(), t) - f.sorted_upper_.begin());
    Integrals total = f.prefix_[n_in];
    const int cu = f.cells_u(), cv = f.cells_v();
    std::vector<std::size_t> cut;
    for (std::size_t k = 0; k < f.cells_.size(); ++k) {
      const auto& c = f.cells_[k];
      const double pad = 0.5 * (c.r_hi - c.r_lo);
      if (c.r_lo - pad > t) continue;
      if (!c.near_critical && c.r_hi + pad < t) continue;
      cut.push_back(k);
    }
    std::vector<Integrals> parts(cut.size(), Integrals{0.0, 0.0, 0.0});
    parallel_for(cut.size(), workers, [&](std::size_t n) {
      const int i = static_cast<int>(cut[n] % cu), j = static_cast<int>(cut[n] / cu);
      (void)cv;
      const Rect rect{f.u_at(i), f.u_at(i) + f.du_, f.v_at(j), f.v_at(j) + f.dv_};
      cut_quadrature(rect, 0, parts[n]);
    });
    for (const auto& p : parts) accumulate(total, p, 1.0);
    return total;
  }
};

ExtrinsicBall extract_ball(const DistanceField& field, double t, unsigned workers) {
  if (!(t > 0.0) || t > field.spec().t_max)
    throw Error(ErrorKind::domain, "radius " + std::to_string(t) + " outside (0, t_max]");
  field.require_regular(t);
  BallExtractor ex(field, t, workers);
  ExtrinsicBall ball;
  ball.t = t;
  ball.boundary = ex.trace();
  ball.samples = ex.samples(ball.boundary);
  ball.min_norm_grad = std::numeric_limits<double>::infinity();
  for (const auto& smp : ball.samples) {
    ball.boundary_length += smp.weight;
    ball.min_norm_grad = std::min(ball.min_norm_grad, smp.frame.norm_grad_tangent);
  }
  if (ball.samples.empty()) ball.min_norm_grad = 0.0;
  if (!ball.samples.empty() && ball.min_norm_grad < 1e-6)
    throw Error(ErrorKind::critical_radius,
                "|grad^P r| = " + std::to_string(ball.min_norm_grad) + " on the boundary at t = " +
                    std::to_string(t));
  const auto ints = ex.area_integrals();
  ball.area = ints[0];
  ball.total_b_sq = ints[1];
  ball.total_gauss = ints[2];
  return ball;
}

BallIntegrals ball_integrals(const DistanceField& field, double t, unsigned workers) {
  if (!(t > 0.0) || t > 1.01 * field.spec().t_max || !(t < field.boundary_min_r()))
    throw Error(ErrorKind::domain, "radius " + std::to_string(t) + " outside the precomputed range");
  const auto ints = BallExtractor(field, t, workers).area_integrals();
  return {ints[0], ints[1], ints[2]};
}

double coarea_integral(const ExtrinsicBall& ball) {
  double sum = 0.0;
  for (const auto& smp : ball.samples) {
    if (!(smp.frame.norm_grad_tangent >= 1e-6))
      throw Error(ErrorKind::critical_radius, "boundary sample at a critical point of r");
    sum += smp.weight / smp.frame.norm_grad_tangent;
  }
  return sum;
}

CriticalScan critical_scan(const DistanceField& field, double t_lo, double t_hi,
                           const std::vector<double>& schedule) {
  if (!(t_lo < t_hi)) throw Error(ErrorKind::domain, "critical_scan needs t_lo < t_hi");
  CriticalScan scan;
  scan.last_low_gradient = t_lo;
  for (int j = 0; j < field.nv(); ++j)
    for (int i = 0; i < field.nu(); ++i) {
      const double r = field.r(i, j), g = field.norm_grad(i, j);
      if (!(r > t_lo && r < t_hi) || !std::isfinite(g)) continue;
      scan.min_norm_grad = std::min(scan.min_norm_grad, g);
      if (g <= 0.1) scan.last_low_gradient = std::max(scan.last_low_gradient, r);
    }
  for (const auto& cp : field.critical_points())
    if (cp.value > t_lo && cp.value < t_hi) {
      scan.min_norm_grad = std::min(scan.min_norm_grad, cp.norm_grad);
      scan.last_low_gradient = std::max(scan.last_low_gradient, cp.value);
    }
  scan.recommended_r0 = scan.last_low_gradient;
  for (double t : schedule)
    if (t > scan.last_low_gradient) {
      scan.recommended_r0 = t;
      break;
    }
  return scan;
}

int ends_count(const DistanceField& field, double t) {
  if (!(t > 0.0) || t > field.spec().t_max)
    throw Error(ErrorKind::domain, "radius outside (0, t_max]");
  return static_cast<int>(BallExtractor(field, t).trace().size());
}

int ends_count(const ExtrinsicBall& ball) { return static_cast<int>(ball.boundary.size()); }

void write_boundary_csv(std::ostream& out, const DistanceField& field, const ExtrinsicBall& ball,
                        const std::vector<double>& kg) {
  const int n = field.surface().form().coordinate_count();
  out << "component,u,v";
  for (int k = 0; k < n; ++k) out << ",x" << k;
  out << ",k_g\n";
  out.precision(12);
  for (std::size_t i = 0; i < ball.samples.size(); ++i) {
    const auto& smp = ball.samples[i];
    out << smp.component << ',' << smp.uv[0] << ',' << smp.uv[1];
    for (int k = 0; k < n; ++k) out << ',' << smp.frame.jet.x[k];
    out << ',';
    if (i < kg.size()) out << kg[i];
    out << '\n';
  }
}

}  // namespace cosurf
