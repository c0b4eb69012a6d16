#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <fwlab/errors.hpp>
#include <fwlab/experiments.hpp>
#include <fwlab/report.hpp>

using namespace fwlab;

namespace {

ExperimentReport demo_report() {
  ExperimentReport report;
  report.name = "demo";
  report.config_echo = {{"alpha", "1"}, {"mode", "fast"}};
  report.columns = {"n", "value"};
  report.rows = {{1.0, 0.1}, {2.0, 0.25}};
  report.derived = {{"slope", -0.5}};
  report.verdicts = {{"ok", true}};
  report.pass = true;
  report.wall_seconds = 123.0;  // must never appear in the output
  return report;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("csv serialization") {
  const std::string csv = to_csv(demo_report());
  CHECK(csv == "n,value\n1,0.1\n2,0.25\n");

  ExperimentReport empty = demo_report();
  empty.rows.clear();
  CHECK(to_csv(empty) == "n,value\n");
}

TEST_CASE("json serialization") {
  const ExperimentReport report = demo_report();
  const std::string text = to_json(report);

  SUBCASE("values survive a parse round trip") {
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["name"] == "demo");
    CHECK(j["config"]["alpha"] == "1");
    CHECK(j["config"]["mode"] == "fast");
    CHECK(j["columns"].size() == 2);
    CHECK(j["rows"][1][1] == 0.25);
    CHECK(j["derived"]["slope"] == -0.5);
    CHECK(j["verdicts"]["ok"] == true);
    CHECK(j["pass"] == true);
    CHECK(!j.contains("wall_seconds"));
  }

  SUBCASE("top-level key order is fixed") {
    const char* keys[] = {"\"name\"",    "\"config\"",   "\"columns\"",
                          "\"rows\"",    "\"derived\"",  "\"verdicts\"",
                          "\"pass\""};
    std::size_t last = 0;
    for (const char* key : keys) {
      const std::size_t at = text.find(key);
      REQUIRE(at != std::string::npos);
      CHECK(at > last);
      last = at;
    }
  }
}

TEST_CASE("report files") {
  const ExperimentReport report = demo_report();
  const std::string path = "demo_report_test.json";

  emit_report(report, path, ReportFormat::json);
  const std::string first = slurp(path);
  emit_report(report, path, ReportFormat::json);
  CHECK(slurp(path) == first);
  CHECK(first == to_json(report));
  std::remove(path.c_str());

  CHECK_THROWS_AS(
      emit_report(report, "no_such_dir_xyz/report.json", ReportFormat::json),
      io_failure);
}

TEST_CASE("dispatch and determinism on a small localization table") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::localization;
  config.n_min = 2;
  config.n_max = 4;
  const ExperimentReport a = run_experiment(config);
  CHECK(a.name == "localization");
  CHECK(a.pass);
  CHECK(!a.rows.empty());
  CHECK(a.columns.size() == a.rows.front().size());

  // Independent runs must serialize to identical bytes.
  const ExperimentReport b = run_experiment(config);
  CHECK(to_json(a) == to_json(b));
  CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("thresholds decide the verdicts") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::decay;
  config.n_min = 4;
  config.n_max = 6;
  const ExperimentReport honest = run_experiment(config);
  CHECK(honest.pass);

  // An absurd margin moves the bound past any real measurement.
  config.thresholds.decay_slope_margin = -5.0;
  const ExperimentReport strict = run_experiment(config);
  CHECK(!strict.pass);
}

TEST_CASE("hypothesis guards refuse out-of-scope parameters") {
  ExperimentConfig config;

  config.experiment = ExperimentKind::localization;
  config.n_min = 1;
  config.n_max = 4;
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::decay;
  config.p = std::numeric_limits<double>::infinity();
  config.r = 2;
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::nonuniform;
  config.s = 1.0;  // below 1 + 1/p
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::nonuniform;
  config.r = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::illposed;
  config.sigma = 3.0;  // needs sigma > 3 + 1/p
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::illposed;
  config.l = 3;
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::illposed;
  config.n_max = 9;  // beyond n_terms - 1
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);

  config = ExperimentConfig{};
  config.experiment = ExperimentKind::picard;
  config.max_iters = 1;
  CHECK_THROWS_AS(run_experiment(config), hypothesis_violation);
}
