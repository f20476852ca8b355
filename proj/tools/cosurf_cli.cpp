// cosurf: report, sweep and catalog listing.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cosurf/catalog.hpp"
#include "cosurf/errors.hpp"
#include "cosurf/pipeline.hpp"

using namespace cosurf;

namespace {

void print_summary(const RunConfig& cfg, const RunResult& r) {
  std::printf("surface %s -> %s (exit %d)\n", cfg.surface.c_str(), to_string(r.status), r.exit_code);
  if (!r.error.empty()) {
    std::printf("  error: %s\n", r.error.c_str());
    return;
  }
  const VerdictReport& rep = *r.report;
  if (rep.chi) std::printf("  chi %d", *rep.chi);
  else std::printf("  chi unresolved");
  std::printf("  R %.6g  sup growth %.6g  R0 %.4g  skipped %zu\n", rep.r_infinity, rep.sup_growth, rep.r0,
              rep.skipped.size());
  for (const auto& v : rep.verdicts) {
    const char* state = !v.applicable ? "n/a" : v.hypothesis_violated ? "VIOLATED" : v.pass ? "pass" : "FAIL";
    std::printf("  %-28s %-8s margin %-12.5g %s\n", v.name.c_str(), state, v.margin, v.message.c_str());
  }
  std::printf("  outputs in %s\n", cfg.output.string().c_str());
}

int catalog_list() {
  for (const CatalogEntry& e : catalog_entries()) {
    std::printf("%s%s\n  %s\n", e.name.c_str(), e.minimal ? "" : " (non-minimal control)", e.description.c_str());
    for (const auto& p : e.params)
      std::printf("  param %-10s default %-8g range [%g, %g]\n", p.name.c_str(), p.default_value, p.min, p.max);
    auto ref = [](const char* what, const std::optional<ReferenceValue>& v) {
      if (v) std::printf("  %-22s %-10.7g [%s]\n", what, v->value, v->provenance.c_str());
    };
    ref("euler characteristic", e.euler_characteristic);
    ref("total curvature", e.total_curvature);
    ref("growth limit", e.growth_limit);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify Chern-Osserman type results on minimal surfaces in space forms"};
  app.require_subcommand(1);

  std::string config_path, output;
  int workers = -1;
  auto* report = app.add_subcommand("report", "run one configuration");
  report->add_option("config", config_path, "run configuration (JSON)")->required();
  report->add_option("-o,--output", output, "override the output directory");
  report->add_option("-j,--workers", workers, "override the worker count");

  std::string param;
  std::vector<std::string> values;
  auto* sw = app.add_subcommand("sweep", "repeat a configuration over parameter values");
  sw->add_option("config", config_path, "run configuration (JSON)")->required();
  sw->add_option("--param", param, "config key to vary")->required();
  sw->add_option("--values", values, "values, comma separated or repeated")->required()->delimiter(',');
  sw->add_option("-o,--output", output, "override the output directory");
  sw->add_option("-j,--workers", workers, "override the worker count");

  auto* cat = app.add_subcommand("catalog", "built-in surfaces");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "list surfaces, parameters and reference values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (list->parsed()) return catalog_list();

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  if (!output.empty()) cfg.output = output;
  if (workers >= 0) cfg.workers = static_cast<unsigned>(workers);

  if (report->parsed()) {
    const RunResult r = run(cfg);
    print_summary(cfg, r);
    return r.exit_code;
  }

  const SweepResult s = sweep(cfg, param, values);
  for (const auto& e : s.entries) {
    std::printf("%s = %s: %s (exit %d)", param.c_str(), e.value.c_str(), to_string(e.result.status),
                e.result.exit_code);
    if (e.result.report && e.result.report->g_b) std::printf("  G_b %.6g", *e.result.report->g_b);
    if (!e.result.error.empty()) std::printf("  %s", e.result.error.c_str());
    std::printf("\n");
  }
  std::printf("aggregate in %s\n", (cfg.output / "sweep.json").string().c_str());
  return s.exit_code;
}
