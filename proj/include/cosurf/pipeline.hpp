#pragma once

// Run configuration and the catalog -> field -> series -> verdicts pipeline.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cosurf/catalog.hpp"
#include "cosurf/verdicts.hpp"

namespace cosurf {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct PoleSpec {
  enum class Kind { default_pole, chart, ambient };
  Kind kind = Kind::default_pole;
  Vec2 chart = Vec2::Zero();
  std::vector<double> ambient;
  std::string label() const;
};

struct ScheduleSpec {
  double t_min = 0.5;
  double t_max = 8.0;
  int count = 24;
  bool geometric = true;
  std::vector<double> radii() const;
};

struct RunConfig {
  std::string surface;
  SurfaceParams params;
  PoleSpec pole;
  /// Second pole; adds the G_b pole-independence verdict.
  std::optional<PoleSpec> pole_b;
  ScheduleSpec schedule;
  GridSpec grid;
  SeriesOptions series;
  Tolerances tolerances;
  std::filesystem::path output = "out";
  unsigned workers = 0;
};

/// Strict parse: unknown keys and out-of-range values are config errors.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);

/// Applies `param = value` for a sweep. Recognized: surface parameter names
/// (bare or "params.<name>"), "grid", "alpha", "t_max", "t_min", "count",
/// "boundary_nodes".
RunConfig with_parameter(const RunConfig& config, const std::string& param, const std::string& value);

enum class RunStatus { pass, fail, hypothesis_violated, error };
const char* to_string(RunStatus status) noexcept;

struct RunResult {
  RunStatus status = RunStatus::error;
  int exit_code = 1;
  std::string error_kind;
  std::string error;
  std::optional<RadiusSeries> series;
  std::optional<VerdictReport> report;
  std::optional<VerdictReport> report_b;
  std::string report_json;
};

/// 2 when a hypothesis is violated, else 0 when every applicable verdict
/// passes, else 1.
int exit_code_for(const VerdictReport& report);

/// Never throws for numeric or config failures; they become exit code 1.
/// Writes series.csv and report.json under config.output when asked.
RunResult run(const RunConfig& config, bool write_outputs = true);

std::vector<std::string> series_columns(const std::vector<double>& alphas);
void write_series_csv(std::ostream& out, const RadiusSeries& series, const VerdictReport& report,
                      const std::vector<double>& alphas);

struct SweepEntry {
  std::string value;
  RunResult result;
};

struct SweepResult {
  std::string param;
  std::vector<SweepEntry> entries;
  std::string summary_json;
  /// 2 if any run hit a hypothesis violation, else 1 if any failed, else 0.
  int exit_code = 0;
};

/// One run per value under <output>/<param>=<value>; writes sweep.json and
/// sweep.csv aggregates under config.output.
SweepResult sweep(const RunConfig& config, const std::string& param, const std::vector<std::string>& values,
                  bool write_outputs = true);

}  // namespace cosurf
