#include "cosurf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "cosurf/errors.hpp"
#include "json.hpp"

namespace cosurf {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::config, what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) config_error("unknown key '" + k + "' in " + where);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) config_error(what + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) config_error(what + " must be an integer");
  return v.get<int>();
}

PoleSpec parse_pole(const json& v, const std::string& where) {
  PoleSpec p;
  if (v.is_string()) {
    if (v.get<std::string>() != "default") config_error(where + " must be \"default\" or an object");
    return p;
  }
  check_keys(v, {"chart", "ambient"}, where);
  if (v.contains("chart") == v.contains("ambient")) config_error(where + " needs exactly one of chart, ambient");
  if (v.contains("chart")) {
    const json& c = v["chart"];
    if (!c.is_array() || c.size() != 2) config_error(where + ".chart must be [u, v]");
    p.kind = PoleSpec::Kind::chart;
    p.chart = Vec2(number(c[0], where + ".chart"), number(c[1], where + ".chart"));
  } else {
    const json& a = v["ambient"];
    if (!a.is_array() || a.empty()) config_error(where + ".ambient must be a coordinate list");
    p.kind = PoleSpec::Kind::ambient;
    for (const auto& x : a) p.ambient.push_back(number(x, where + ".ambient"));
  }
  return p;
}

json pole_json(const PoleSpec& p) {
  switch (p.kind) {
    case PoleSpec::Kind::chart:
      return json{{"chart", {p.chart[0], p.chart[1]}}};
    case PoleSpec::Kind::ambient:
      return json{{"ambient", p.ambient}};
    default:
      return "default";
  }
}

// NaN and infinities become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vec_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json tolerances_json(const Tolerances& t) {
  return {{"growth_slack", t.growth_slack}, {"isoperimetric", t.isoperimetric},
          {"lemma31", t.lemma31},           {"prop32", t.prop32},
          {"kg_gap", t.kg_gap},             {"coarea", t.coarea},
          {"chi_residual", t.chi_residual}, {"convergence", t.convergence},
          {"chern_osserman", t.chern_osserman}, {"gb_identity", t.gb_identity},
          {"equality", t.equality},         {"gb_nonnegative", t.gb_nonnegative},
          {"gb_cauchy", t.gb_cauchy},       {"gb_pole", t.gb_pole}};
}

void parse_tolerances(const json& v, Tolerances& t) {
  json defaults = tolerances_json(t);
  if (!v.is_object()) config_error("tolerances must be an object");
  for (const auto& [k, x] : v.items()) {
    if (!defaults.contains(k)) config_error("unknown tolerance '" + k + "'");
    const double val = number(x, "tolerances." + k);
    if (!(val >= 0.0)) config_error("tolerance '" + k + "' must be non-negative");
    defaults[k] = val;
  }
  t.growth_slack = defaults["growth_slack"];
  t.isoperimetric = defaults["isoperimetric"];
  t.lemma31 = defaults["lemma31"];
  t.prop32 = defaults["prop32"];
  t.kg_gap = defaults["kg_gap"];
  t.coarea = defaults["coarea"];
  t.chi_residual = defaults["chi_residual"];
  t.convergence = defaults["convergence"];
  t.chern_osserman = defaults["chern_osserman"];
  t.gb_identity = defaults["gb_identity"];
  t.equality = defaults["equality"];
  t.gb_nonnegative = defaults["gb_nonnegative"];
  t.gb_cauchy = defaults["gb_cauchy"];
  t.gb_pole = defaults["gb_pole"];
}

void validate(const RunConfig& c) {
  catalog_entry(c.surface);
  c.schedule.radii();
  for (double a : c.series.alphas)
    if (!(a > 0.0 && a < 2.0)) config_error("alpha values must lie in (0, 2)");
  if (c.grid.nu < 64 || c.grid.nv < 64) config_error("grid needs at least 64 nodes per direction");
  if (c.grid.boundary_nodes < 1 || c.grid.boundary_nodes > 5) config_error("boundary_nodes must be in [1, 5]");
  if (!(c.series.stencil > 0.0 && c.series.stencil < 0.05)) config_error("stencil must lie in (0, 0.05)");
}

AmbientVector resolve_pole(const PoleSpec& p, const CatalogSurface& s) {
  switch (p.kind) {
    case PoleSpec::Kind::chart: {
      if (!s.surface.domain().contains(p.chart[0], p.chart[1]))
        throw Error(ErrorKind::config, "pole chart coordinates outside the parameter domain");
      return s.surface.jet(p.chart[0], p.chart[1]).x;
    }
    case PoleSpec::Kind::ambient: {
      const int n = s.surface.form().coordinate_count();
      if (static_cast<int>(p.ambient.size()) != n)
        throw Error(ErrorKind::config, "ambient pole needs " + std::to_string(n) + " coordinates");
      AmbientVector x(n);
      for (int k = 0; k < n; ++k) x[k] = p.ambient[k];
      return x;
    }
    default:
      return s.default_pole;
  }
}

std::string fmt_value(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

json verdict_json(const VerdictRecord& v) {
  json vals = json::object();
  for (const auto& [k, x] : v.values) vals[k] = num(x);
  return {{"name", v.name},
          {"applicable", v.applicable},
          {"pass", v.pass},
          {"hypothesis_violated", v.hypothesis_violated},
          {"margin", num(v.margin)},
          {"tolerance", v.tolerance},
          {"message", v.message},
          {"values", vals},
          {"residuals", vec_json(v.residuals)}};
}

json report_body(const VerdictReport& r, const RadiusSeries& s) {
  json skipped = json::array();
  for (const auto& [t, why] : r.skipped) skipped.push_back({{"t", t}, {"reason", why}});
  json pole = json::array();
  for (int k = 0; k < r.pole.size(); ++k) pole.push_back(r.pole[k]);
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  std::vector<double> decay, ends;
  for (const auto& rec : s.records) {
    decay.push_back(rec.skipped ? std::numeric_limits<double>::quiet_NaN() : rec.max_b);
    ends.push_back(rec.skipped ? std::numeric_limits<double>::quiet_NaN() : rec.ends);
  }
  json co = json::object();
  if (const VerdictRecord* v = r.find("chern_osserman_inequality")) co = verdict_json(*v);
  json eq = json::object();
  if (const VerdictRecord* v = r.find("chern_osserman_equality")) eq = verdict_json(*v);
  json out = {{"surface", r.surface},
              {"pole", {{"label", r.pole_label}, {"ambient", pole}, {"on_surface", r.pole_on_surface}}},
              {"curvature", r.curvature},
              {"minimal", r.minimal},
              {"schedule", r.schedule},
              {"skipped_radii", skipped},
              {"r0", r.r0},
              {"min_norm_grad", s.scan.min_norm_grad},
              {"chi", r.chi ? json(*r.chi) : json(nullptr)},
              {"sup_growth", num(r.sup_growth)},
              {"growth_monotone", r.growth_monotone},
              {"R_infinity", num(r.r_infinity)},
              {"R_convergence",
               {{"status", r.r_convergence.status},
                {"converged", r.r_convergence.converged},
                {"divergent", r.r_convergence.divergent},
                {"last_change", r.r_convergence.last_change},
                {"log_slopes", vec_json(r.r_convergence.log_slopes)}}},
              {"G_b",
               {{"estimate", r.g_b ? num(*r.g_b) : json(nullptr)},
                {"spread", num(r.g_b_spread)},
                {"resolved", r.g_b_resolved},
                {"integrand", vec_json(r.gb_integrand)}}},
              {"decay_scan", vec_json(decay)},
              {"ends", vec_json(ends)},
              {"chern_osserman", co},
              {"chern_osserman_equality", eq},
              {"verdicts", verdicts},
              {"tolerances", tolerances_json(r.tolerances)}};
  return out;
}

json reference_json(const CatalogEntry& e) {
  auto ref = [](const std::optional<ReferenceValue>& v) {
    return v ? json{{"value", v->value}, {"provenance", v->provenance}} : json(nullptr);
  };
  return {{"euler_characteristic", ref(e.euler_characteristic)},
          {"total_curvature", ref(e.total_curvature)},
          {"growth_limit", ref(e.growth_limit)}};
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::config, "cannot write " + p.string());
  f << text;
}

}  // namespace

std::string PoleSpec::label() const {
  std::ostringstream os;
  os << std::setprecision(6);
  switch (kind) {
    case Kind::chart:
      os << "chart(" << chart[0] << ", " << chart[1] << ")";
      break;
    case Kind::ambient:
      os << "ambient(";
      for (std::size_t k = 0; k < ambient.size(); ++k) os << (k ? ", " : "") << ambient[k];
      os << ")";
      break;
    default:
      os << "default";
  }
  return os.str();
}

std::vector<double> ScheduleSpec::radii() const {
  if (count < 1) config_error("schedule.count must be at least 1");
  if (!(t_min > 0.0)) config_error("schedule.t_min must be positive");
  if (count == 1) {
    if (t_max != t_min) config_error("a single-radius schedule needs t_min == t_max");
    return {t_min};
  }
  if (!(t_max > t_min)) config_error("schedule needs t_max > t_min");
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / (count - 1);
    out[k] = geometric ? t_min * std::pow(t_max / t_min, s) : t_min + (t_max - t_min) * s;
  }
  out.back() = t_max;
  return out;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, {"surface", "params", "pole", "pole_b", "schedule", "grid", "alphas", "tolerances", "output",
                 "workers", "stencil"},
             "config");
  RunConfig c;
  if (!j.contains("surface") || !j["surface"].is_string()) config_error("config.surface must be a string");
  c.surface = j["surface"];
  if (j.contains("params")) {
    if (!j["params"].is_object()) config_error("params must be an object");
    for (const auto& [k, v] : j["params"].items()) c.params[k] = number(v, "params." + k);
  }
  if (j.contains("pole")) c.pole = parse_pole(j["pole"], "pole");
  if (j.contains("pole_b")) c.pole_b = parse_pole(j["pole_b"], "pole_b");
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    check_keys(s, {"t_min", "t_max", "count", "spacing"}, "schedule");
    if (s.contains("t_min")) c.schedule.t_min = number(s["t_min"], "schedule.t_min");
    if (s.contains("t_max")) c.schedule.t_max = number(s["t_max"], "schedule.t_max");
    if (s.contains("count")) c.schedule.count = integer(s["count"], "schedule.count");
    if (s.contains("spacing")) {
      const std::string sp = s["spacing"].is_string() ? s["spacing"].get<std::string>() : "";
      if (sp != "linear" && sp != "geometric") config_error("schedule.spacing must be linear or geometric");
      c.schedule.geometric = sp == "geometric";
    }
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, {"nu", "nv", "periodic_u", "periodic_v", "boundary_nodes"}, "grid");
    if (g.contains("nu")) c.grid.nu = integer(g["nu"], "grid.nu");
    if (g.contains("nv")) c.grid.nv = integer(g["nv"], "grid.nv");
    if (g.contains("boundary_nodes")) c.grid.boundary_nodes = integer(g["boundary_nodes"], "grid.boundary_nodes");
    for (const char* key : {"periodic_u", "periodic_v"})
      if (g.contains(key)) {
        if (!g[key].is_boolean()) config_error(std::string("grid.") + key + " must be a boolean");
        (std::string(key) == "periodic_u" ? c.grid.periodic_u : c.grid.periodic_v) = g[key].get<bool>();
      }
  }
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array() || j["alphas"].empty()) config_error("alphas must be a non-empty list");
    c.series.alphas.clear();
    for (const auto& a : j["alphas"]) c.series.alphas.push_back(number(a, "alphas"));
  }
  if (j.contains("tolerances")) parse_tolerances(j["tolerances"], c.tolerances);
  if (j.contains("output")) {
    if (!j["output"].is_string()) config_error("output must be a path string");
    c.output = j["output"].get<std::string>();
  }
  if (j.contains("workers")) {
    const int w = integer(j["workers"], "workers");
    if (w < 0) config_error("workers must be non-negative");
    c.workers = static_cast<unsigned>(w);
  }
  if (j.contains("stencil")) c.series.stencil = number(j["stencil"], "stencil");
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) config_error("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json grid = {{"nu", c.grid.nu}, {"nv", c.grid.nv}, {"boundary_nodes", c.grid.boundary_nodes}};
  if (c.grid.periodic_u) grid["periodic_u"] = *c.grid.periodic_u;
  if (c.grid.periodic_v) grid["periodic_v"] = *c.grid.periodic_v;
  json j = {{"surface", c.surface},
            {"params", c.params},
            {"pole", pole_json(c.pole)},
            {"schedule",
             {{"t_min", c.schedule.t_min},
              {"t_max", c.schedule.t_max},
              {"count", c.schedule.count},
              {"spacing", c.schedule.geometric ? "geometric" : "linear"}}},
            {"grid", grid},
            {"alphas", c.series.alphas},
            {"tolerances", tolerances_json(c.tolerances)},
            {"output", c.output.string()},
            {"workers", c.workers},
            {"stencil", c.series.stencil}};
  if (c.pole_b) j["pole_b"] = pole_json(*c.pole_b);
  return j.dump(2);
}

RunConfig with_parameter(const RunConfig& config, const std::string& param, const std::string& value) {
  RunConfig c = config;
  double x = 0.0;
  try {
    std::size_t used = 0;
    x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    config_error("sweep value '" + value + "' is not a number");
  }
  std::string key = param;
  if (key.rfind("params.", 0) == 0) key = key.substr(7);
  const CatalogEntry& entry = catalog_entry(c.surface);
  const bool surface_param = std::any_of(entry.params.begin(), entry.params.end(),
                                         [&](const ParameterRange& r) { return r.name == key; });
  auto whole = [&](const std::string& what) {
    if (x != std::floor(x)) config_error(what + " must be an integer");
    return static_cast<int>(x);
  };
  if (surface_param) {
    c.params[key] = x;
  } else if (param == "grid") {
    c.grid.nu = c.grid.nv = whole("grid");
  } else if (param == "alpha") {
    c.series.alphas = {x};
  } else if (param == "t_max") {
    c.schedule.t_max = x;
  } else if (param == "t_min") {
    c.schedule.t_min = x;
  } else if (param == "count") {
    c.schedule.count = whole("count");
  } else if (param == "boundary_nodes") {
    c.grid.boundary_nodes = whole("boundary_nodes");
  } else {
    config_error("unrecognized sweep parameter '" + param + "'");
  }
  validate(c);
  return c;
}

const char* to_string(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::pass:
      return "pass";
    case RunStatus::fail:
      return "fail";
    case RunStatus::hypothesis_violated:
      return "hypothesis_violated";
    default:
      return "error";
  }
}

int exit_code_for(const VerdictReport& r) {
  if (r.hypothesis_violated()) return 2;
  return r.all_pass() ? 0 : 1;
}

std::vector<std::string> series_columns(const std::vector<double>& alphas) {
  std::vector<std::string> c{"t", "area", "length", "ratio", "R", "chi_hat", "kg_gap_max", "lemma31_margin"};
  for (double a : alphas) c.push_back("prop32_margin_a" + fmt_value(a));
  for (const char* extra : {"iso_margin", "gb_integrand", "skipped", "coarea", "area_derivative", "R_prime",
                            "total_gauss", "total_kg", "ends", "min_norm_grad", "max_b", "b_term", "ratio_prime",
                            "kg_samples"})
    c.push_back(extra);
  return c;
}

void write_series_csv(std::ostream& out, const RadiusSeries& s, const VerdictReport& r,
                      const std::vector<double>& alphas) {
  const auto cols = series_columns(alphas);
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  out << std::setprecision(12);
  const VerdictRecord* iso = r.find("isoperimetric");
  auto cell = [&](double x) {
    out << ',';
    if (std::isfinite(x)) out << x;
  };
  for (std::size_t k = 0; k < s.records.size(); ++k) {
    const RadiusRecord& rec = s.records[k];
    out << rec.t;
    if (rec.skipped) {
      for (std::size_t m = 1; m < cols.size(); ++m) out << (cols[m] == "skipped" ? ",1" : ",");
      out << '\n';
      continue;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cell(rec.area);
    cell(rec.length);
    cell(rec.ratio);
    cell(rec.total_b_sq);
    cell(rec.chi.chi_hat);
    cell(rec.kg_gap_max);
    cell(rec.minimal ? rec.lemma31.margin() : nan);
    for (double a : alphas) {
      const auto it = rec.prop32.find(a);
      cell(it == rec.prop32.end() ? nan : it->second.margin());
    }
    cell(iso && iso->applicable && k < iso->residuals.size() ? iso->residuals[k] : nan);
    cell(k < r.gb_integrand.size() ? r.gb_integrand[k] : nan);
    out << ",0";
    cell(rec.coarea);
    cell(rec.area_derivative);
    cell(rec.r_prime);
    cell(rec.total_gauss);
    cell(rec.total_kg);
    cell(rec.ends);
    cell(rec.min_norm_grad);
    cell(rec.max_b);
    cell(rec.b_term);
    cell(rec.ratio_prime);
    cell(rec.kg_samples);
    out << '\n';
  }
}

RunResult run(const RunConfig& config, bool write_outputs) {
  RunResult res;
  json doc = {{"schema_version", kReportSchemaVersion}, {"config", json::parse(config_to_json(config))}};
  try {
    validate(config);
    const CatalogSurface cs = make_surface(config.surface, config.params);
    doc["reference"] = reference_json(cs.entry);
    const std::vector<double> radii = config.schedule.radii();
    GridSpec grid = config.grid;
    grid.t_max = radii.back();
    grid.workers = config.workers;
    SeriesOptions opts = config.series;
    opts.workers = config.workers;

    auto one = [&](const PoleSpec& pole, RadiusSeries& series) {
      const DistanceField field = build_field(cs.surface, resolve_pole(pole, cs), grid);
      series = build_series(field, radii, opts);
      VerdictReport rep = assemble_report(field, series, config.tolerances, config.surface);
      rep.pole_label = pole.label();
      return rep;
    };
    RadiusSeries series;
    VerdictReport report = one(config.pole, series);
    if (config.pole_b) {
      RadiusSeries series_b;
      VerdictReport rb = one(*config.pole_b, series_b);
      report.verdicts.push_back(gb_pole_independence(report, rb));
      doc["pole_b"] = report_body(rb, series_b);
      res.report_b = rb;
    }
    doc.update(report_body(report, series));
    res.exit_code = exit_code_for(report);
    res.status = res.exit_code == 0   ? RunStatus::pass
                 : res.exit_code == 2 ? RunStatus::hypothesis_violated
                                      : RunStatus::fail;
    if (write_outputs) {
      std::filesystem::create_directories(config.output);
      std::ofstream csv(config.output / "series.csv");
      if (!csv) throw Error(ErrorKind::config, "cannot write " + (config.output / "series.csv").string());
      write_series_csv(csv, series, report, opts.alphas);
    }
    res.series = std::move(series);
    res.report = std::move(report);
  } catch (const Error& e) {
    res.status = RunStatus::error;
    res.exit_code = 1;
    res.error_kind = to_string(e.kind());
    res.error = e.what();
  } catch (const std::exception& e) {
    res.status = RunStatus::error;
    res.exit_code = 1;
    res.error_kind = "internal";
    res.error = e.what();
  }
  doc["status"] = to_string(res.status);
  doc["exit_code"] = res.exit_code;
  if (res.status == RunStatus::error) doc["error"] = {{"kind", res.error_kind}, {"message", res.error}};
  res.report_json = doc.dump(2);
  if (write_outputs) {
    try {
      std::filesystem::create_directories(config.output);
      write_text(config.output / "report.json", res.report_json + "\n");
    } catch (const std::exception& e) {
      if (res.status != RunStatus::error) {
        res.status = RunStatus::error;
        res.exit_code = 1;
        res.error_kind = "io";
        res.error = e.what();
      }
    }
  }
  return res;
}

SweepResult sweep(const RunConfig& config, const std::string& param, const std::vector<std::string>& values,
                  bool write_outputs) {
  SweepResult out;
  out.param = param;
  json table = json::array();
  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "value,status,exit_code,chi,R_infinity,sup_growth,G_b,chern_osserman_margin,kg_gap_max,"
         "prop32_min_margin,error\n";
  bool any_fail = false, any_violation = false;
  for (const std::string& value : values) {
    SweepEntry entry;
    entry.value = value;
    try {
      RunConfig c = with_parameter(config, param, value);
      c.output = config.output / (param + "=" + value);
      entry.result = run(c, write_outputs);
    } catch (const Error& e) {
      entry.result.status = RunStatus::error;
      entry.result.exit_code = 1;
      entry.result.error_kind = to_string(e.kind());
      entry.result.error = e.what();
    }
    const RunResult& r = entry.result;
    any_violation = any_violation || r.exit_code == 2;
    any_fail = any_fail || r.exit_code == 1;
    json row = {{"value", value}, {"status", to_string(r.status)}, {"exit_code", r.exit_code}};
    double kg = std::numeric_limits<double>::quiet_NaN(), p32 = kg, co = kg;
    if (r.report) {
      const VerdictReport& rep = *r.report;
      if (const VerdictRecord* v = rep.find("kg_identity")) kg = v->margin;
      if (const VerdictRecord* v = rep.find("chern_osserman_inequality")) co = v->margin;
      for (const auto& v : rep.verdicts)
        if (v.name.rfind("prop32_a", 0) == 0 && v.applicable)
          p32 = std::isfinite(p32) ? std::min(p32, v.margin) : v.margin;
      row["chi"] = rep.chi ? json(*rep.chi) : json(nullptr);
      row["R_infinity"] = num(rep.r_infinity);
      row["sup_growth"] = num(rep.sup_growth);
      row["G_b"] = rep.g_b ? num(*rep.g_b) : json(nullptr);
    }
    row["chern_osserman_margin"] = num(co);
    row["kg_gap_max"] = num(kg);
    row["prop32_min_margin"] = num(p32);
    if (!r.error.empty()) row["error"] = r.error;
    table.push_back(row);

    auto field = [&](const char* k) {
      csv << ',';
      if (row.contains(k) && !row[k].is_null()) {
        if (row[k].is_string()) {
          std::string s = row[k];
          std::replace(s.begin(), s.end(), ',', ';');
          csv << s;
        } else {
          csv << row[k].dump();
        }
      }
    };
    csv << value;
    for (const char* k : {"status", "exit_code", "chi", "R_infinity", "sup_growth", "G_b", "chern_osserman_margin",
                          "kg_gap_max", "prop32_min_margin", "error"})
      field(k);
    csv << '\n';
    out.entries.push_back(std::move(entry));
  }
  out.exit_code = any_violation ? 2 : any_fail ? 1 : 0;
  const json summary = {{"schema_version", kReportSchemaVersion},
                        {"param", param},
                        {"values", values},
                        {"runs", table},
                        {"exit_code", out.exit_code}};
  out.summary_json = summary.dump(2);
  if (write_outputs) {
    std::filesystem::create_directories(config.output);
    write_text(config.output / "sweep.json", out.summary_json + "\n");
    write_text(config.output / "sweep.csv", csv.str());
  }
  return out;
}

}  // namespace cosurf
