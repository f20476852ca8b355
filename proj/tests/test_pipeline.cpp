#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cosurf/errors.hpp"
#include "cosurf/pipeline.hpp"
#include "json.hpp"

using namespace cosurf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cosurf_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a config error");
  return ErrorKind::domain;
}

}  // namespace

TEST_CASE("schedules") {
  ScheduleSpec s;
  s.t_min = 0.5;
  s.t_max = 8.0;
  s.count = 5;
  const auto g = s.radii();
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.5);
  CHECK(g.back() == 8.0);
  CHECK(g[2] == doctest::Approx(2.0));
  s.geometric = false;
  CHECK(s.radii()[2] == doctest::Approx(4.25));
  s.count = 0;
  CHECK_THROWS_AS(s.radii(), Error);
}

TEST_CASE("config parsing is strict") {
  const RunConfig c = parse_config(R"({"surface": "catenoid", "schedule": {"t_max": 5, "count": 4},
                                        "grid": {"nu": 128, "nv": 128}, "alphas": [0.5],
                                        "tolerances": {"chern_osserman": 0.03}, "pole": {"chart": [0.5, 0.0]}})");
  CHECK(c.surface == "catenoid");
  CHECK(c.schedule.t_max == 5.0);
  CHECK(c.grid.nu == 128);
  CHECK(c.series.alphas == std::vector<double>{0.5});
  CHECK(c.tolerances.chern_osserman == 0.03);
  CHECK(c.pole.kind == PoleSpec::Kind::chart);

  CHECK(parse_error_kind(R"({"surface": "plane", "colour": 1})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "plane", "alphas": [2.5]})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "plane", "schedule": {"spacing": "cubic"}})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "plane", "schedule": {"t_min": 3, "t_max": 2}})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "plane", "grid": {"nu": 32}})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "plane", "tolerances": {"fudge": 1}})") == ErrorKind::config);
  CHECK(parse_error_kind(R"({"surface": "nosuch"})") == ErrorKind::unknown_surface);
  CHECK(parse_error_kind("{not json") == ErrorKind::config);

  const RunConfig back = parse_config(config_to_json(c));
  CHECK(back.schedule.count == c.schedule.count);
  CHECK(back.pole.chart == c.pole.chart);
}

TEST_CASE("sweep parameters") {
  const RunConfig base = parse_config(R"({"surface": "hyperbolic_catenoid"})");
  CHECK(with_parameter(base, "c", "2").params.at("c") == 2.0);
  CHECK(with_parameter(base, "params.w_max", "20").params.at("w_max") == 20.0);
  CHECK(with_parameter(base, "grid", "128").grid.nv == 128);
  CHECK(with_parameter(base, "alpha", "1.5").series.alphas == std::vector<double>{1.5});
  CHECK_THROWS_AS(with_parameter(base, "colour", "1"), Error);
  CHECK_THROWS_AS(with_parameter(base, "grid", "100.5"), Error);
  CHECK_THROWS_AS(with_parameter(base, "c", "two"), Error);
}

TEST_CASE("plane run writes a report and a series") {
  RunConfig c = parse_config(R"({"surface": "plane", "schedule": {"t_min": 0.5, "t_max": 6, "count": 6},
                                  "grid": {"nu": 128, "nv": 128}})");
  c.output = scratch("plane");
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.status == RunStatus::pass);

  const auto doc = nlohmann::json::parse(read(c.output / "report.json"));
  CHECK(doc["schema_version"] == kReportSchemaVersion);
  CHECK(doc["chi"] == 1);
  CHECK(std::abs(doc["chern_osserman"]["margin"].get<double>()) <= 1e-6);
  CHECK(doc["skipped_radii"].is_array());

  std::istringstream csv(read(c.output / "series.csv"));
  std::string header, line;
  std::getline(csv, header);
  const auto cols = series_columns(c.series.alphas);
  std::string expect;
  for (std::size_t k = 0; k < cols.size(); ++k) expect += (k ? "," : "") + cols[k];
  CHECK(header == expect);
  CHECK(header.rfind("t,area,length,ratio,R,chi_hat,kg_gap_max,lemma31_margin,prop32_margin_a0.25", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 6);
  fs::remove_all(c.output);
}

TEST_CASE("small chart is a numeric error with exit 1") {
  RunConfig c = parse_config(R"({"surface": "plane", "params": {"extent": 5}, "schedule": {"t_max": 20}})");
  c.output = scratch("small");
  const RunResult r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(r.status == RunStatus::error);
  CHECK(r.error.find("DomainTooSmall") != std::string::npos);
  const auto doc = nlohmann::json::parse(read(c.output / "report.json"));
  CHECK(doc["status"] == "error");
  fs::remove_all(c.output);
}

TEST_CASE("surface parameters out of range are config errors") {
  RunConfig c = parse_config(R"({"surface": "catenoid", "params": {"v_extent": 100}})");
  const RunResult r = run(c, false);
  CHECK(r.exit_code == 1);
}

TEST_CASE("sweep isolates failing runs") {
  RunConfig c = parse_config(R"({"surface": "plane", "schedule": {"t_min": 1, "t_max": 4, "count": 3},
                                  "grid": {"nu": 96, "nv": 96}})");
  c.output = scratch("sweep");
  const SweepResult s = sweep(c, "extent", {"2", "8"});
  REQUIRE(s.entries.size() == 2);
  CHECK(s.entries[0].result.exit_code == 1);
  CHECK(s.entries[1].result.exit_code == 0);
  CHECK(s.exit_code == 1);
  const auto doc = nlohmann::json::parse(read(c.output / "sweep.json"));
  CHECK(doc["runs"].size() == 2);
  CHECK(fs::exists(c.output / "extent=8" / "report.json"));
  CHECK(fs::exists(c.output / "sweep.csv"));
  fs::remove_all(c.output);
}
