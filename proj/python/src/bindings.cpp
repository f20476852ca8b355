// Python bindings: catalog, distance fields, extrinsic balls, series and runs.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosurf/catalog.hpp"
#include "cosurf/errors.hpp"
#include "cosurf/pipeline.hpp"
#include "cosurf/space_form.hpp"

namespace py = pybind11;
using namespace cosurf;

namespace {

std::vector<double> to_list(const AmbientVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

AmbientVector from_list(const std::vector<double>& v) {
  if (v.empty() || v.size() > static_cast<std::size_t>(kMaxCoordinates))
    throw Error(ErrorKind::domain, "ambient point has the wrong number of coordinates");
  AmbientVector x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) x[static_cast<Eigen::Index>(k)] = v[k];
  return x;
}

py::dict record_dict(const RadiusRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["skipped"] = r.skipped;
  d["skip_reason"] = r.skip_reason;
  if (r.skipped) return d;
  d["area"] = r.area;
  d["length"] = r.length;
  d["coarea"] = r.coarea;
  d["area_derivative"] = r.area_derivative;
  d["R"] = r.total_b_sq;
  d["R_prime"] = r.r_prime;
  d["total_gauss"] = r.total_gauss;
  d["total_kg"] = r.total_kg;
  d["chi_hat"] = r.chi.chi_hat;
  d["ends"] = r.ends;
  d["min_norm_grad"] = r.min_norm_grad;
  d["max_b"] = r.max_b;
  d["b_term"] = r.b_term;
  d["ratio"] = r.ratio;
  d["ratio_prime"] = r.ratio_prime;
  d["kg_gap_max"] = r.kg_gap_max;
  d["kg_samples"] = r.kg_samples;
  if (r.minimal) {
    d["lemma31"] = py::make_tuple(r.lemma31.lhs, r.lemma31.rhs);
    py::dict p;
    for (const auto& [a, s] : r.prop32) p[py::float_(a)] = py::make_tuple(s.lhs, s.rhs);
    d["prop32"] = p;
  }
  return d;
}

py::dict verdict_dict(const VerdictRecord& v) {
  py::dict d;
  d["name"] = v.name;
  d["applicable"] = v.applicable;
  d["pass"] = v.pass;
  d["hypothesis_violated"] = v.hypothesis_violated;
  d["margin"] = v.margin;
  d["tolerance"] = v.tolerance;
  d["message"] = v.message;
  d["values"] = v.values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical checks of Chern-Osserman type results for minimal surfaces in space forms";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<SpaceForm>(m, "SpaceForm")
      .def(py::init<double, int>(), py::arg("curvature"), py::arg("dimension") = 3)
      .def_property_readonly("curvature", &SpaceForm::curvature)
      .def_property_readonly("dimension", &SpaceForm::dimension)
      .def("distance", [](const SpaceForm& f, const std::vector<double>& p, const std::vector<double>& q) {
        return f.distance(from_list(p), from_list(q));
      });
  m.def("sphere_mean_curvature", &sphere_mean_curvature);
  m.def("disk_area", &disk_area);
  m.def("circle_length", &circle_length);

  py::class_<CatalogSurface>(m, "Surface")
      .def_readonly("name", &CatalogSurface::name)
      .def_property_readonly("minimal", [](const CatalogSurface& s) { return s.surface.minimal(); })
      .def_property_readonly("curvature", [](const CatalogSurface& s) { return s.surface.form().curvature(); })
      .def_property_readonly("default_pole", [](const CatalogSurface& s) { return to_list(s.default_pole); })
      .def("point", [](const CatalogSurface& s, double u, double v) { return to_list(s.surface.jet(u, v).x); })
      .def("gauss_equation_residual",
           [](const CatalogSurface& s, double u, double v) { return gauss_equation_residual(s.surface, u, v); })
      .def("max_mean_curvature",
           [](const CatalogSurface& s, int samples) { return max_mean_curvature(s.surface, samples); },
           py::arg("samples") = 500);

  m.def("catalog_names", [] {
    std::vector<std::string> out;
    for (const auto& e : catalog_entries()) out.push_back(e.name);
    return out;
  });
  m.def("make_surface", &make_surface, py::arg("name"), py::arg("params") = SurfaceParams{});

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_property_readonly("uv", [](const CriticalPoint& c) { return std::make_pair(c.uv[0], c.uv[1]); })
      .def_readonly("value", &CriticalPoint::value)
      .def_readonly("norm_grad", &CriticalPoint::norm_grad);

  py::class_<DistanceField>(m, "DistanceField")
      .def_property_readonly("boundary_min_r", &DistanceField::boundary_min_r)
      .def_property_readonly("pole_on_surface", &DistanceField::pole_on_surface)
      .def_property_readonly("critical_points", &DistanceField::critical_points)
      .def_property_readonly("pole", [](const DistanceField& f) { return to_list(f.pole()); });

  m.def(
      "build_field",
      [](const CatalogSurface& s, std::optional<std::vector<double>> pole, double t_max, int n, unsigned workers) {
        GridSpec g;
        g.nu = g.nv = n;
        g.t_max = t_max;
        g.workers = workers;
        return build_field(s.surface, pole ? from_list(*pole) : s.default_pole, g);
      },
      py::arg("surface"), py::arg("pole") = py::none(), py::arg("t_max") = 8.0, py::arg("grid") = 512,
      py::arg("workers") = 0, py::keep_alive<0, 1>());

  py::class_<ExtrinsicBall>(m, "ExtrinsicBall")
      .def_readonly("t", &ExtrinsicBall::t)
      .def_readonly("area", &ExtrinsicBall::area)
      .def_readonly("boundary_length", &ExtrinsicBall::boundary_length)
      .def_readonly("total_b_sq", &ExtrinsicBall::total_b_sq)
      .def_readonly("total_gauss", &ExtrinsicBall::total_gauss)
      .def_property_readonly("components", [](const ExtrinsicBall& b) { return b.boundary.size(); })
      .def_property_readonly("sample_count", [](const ExtrinsicBall& b) { return b.samples.size(); })
      .def_property_readonly("boundary", [](const ExtrinsicBall& b) {
        std::vector<std::vector<std::pair<double, double>>> out;
        for (const auto& line : b.boundary) {
          auto& l = out.emplace_back();
          for (const Vec2& p : line) l.emplace_back(p[0], p[1]);
        }
        return out;
      });

  m.def("extract_ball", [](const DistanceField& f, double t) { return extract_ball(f, t); });
  m.def("coarea_integral", &coarea_integral);
  m.def("ends_count", py::overload_cast<const DistanceField&, double>(&ends_count));
  m.def("gauss_bonnet_chi",
        [](const DistanceField& f, const ExtrinsicBall& b) { return gauss_bonnet_chi(f, b).chi_hat; });
  m.def("geodesic_curvatures", [](const DistanceField& f, const ExtrinsicBall& b) {
    std::vector<double> formula, direct;
    for (const auto& s : b.samples) {
      formula.push_back(geodesic_curvature_formula(f.surface().form(), s));
      direct.push_back(geodesic_curvature_direct(f, b.t, s));
    }
    return std::make_pair(formula, direct);
  });
  m.def("lemma31_sides", [](const DistanceField& f, const ExtrinsicBall& b) {
    const Sides s = lemma31_sides(f, b);
    return std::make_pair(s.lhs, s.rhs);
  });
  m.def(
      "prop32_sides",
      [](const DistanceField& f, const ExtrinsicBall& b, double alpha, int chi, double r_prime) {
        const Sides s = prop32_sides(f, b, alpha, chi, r_prime);
        return std::make_pair(s.lhs, s.rhs);
      },
      py::arg("field"), py::arg("ball"), py::arg("alpha"), py::arg("chi"), py::arg("r_prime"));
  m.def("decay_scan", &decay_scan);
  m.def("growth_ratio", &growth_ratio);

  m.def(
      "series",
      [](const DistanceField& f, const std::vector<double>& schedule, std::vector<double> alphas) {
        SeriesOptions o;
        if (!alphas.empty()) o.alphas = std::move(alphas);
        const RadiusSeries s = build_series(f, schedule, o);
        const VerdictReport r = assemble_report(f, s);
        py::list records;
        for (const auto& rec : s.records) records.append(record_dict(rec));
        py::list verdicts;
        for (const auto& v : r.verdicts) verdicts.append(verdict_dict(v));
        py::dict out;
        out["records"] = records;
        out["verdicts"] = verdicts;
        out["r0"] = s.r0;
        out["chi"] = r.chi ? py::object(py::int_(*r.chi)) : py::object(py::none());
        out["sup_growth"] = r.sup_growth;
        out["R_infinity"] = r.r_infinity;
        out["R_convergence"] = r.r_convergence.status;
        out["G_b"] = r.g_b ? py::object(py::float_(*r.g_b)) : py::object(py::none());
        out["exit_code"] = exit_code_for(r);
        return out;
      },
      py::arg("field"), py::arg("schedule"), py::arg("alphas") = std::vector<double>{});

  m.def(
      "run",
      [](const std::string& config_json, bool write_outputs) {
        const RunResult r = run(parse_config(config_json), write_outputs);
        return std::make_pair(r.exit_code, r.report_json);
      },
      py::arg("config_json"), py::arg("write_outputs") = false,
      "Runs a JSON configuration; returns (exit_code, report_json).");
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;
}
