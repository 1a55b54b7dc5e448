#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "critwin/error.hpp"
#include "critwin/harness.hpp"

using namespace critwin;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.degrees = "1,3,5,7";
  cfg.ns = {200, 400};
  cfg.mus = {-1.0, 0.5};
  cfg.trials = 40;
  cfg.seed = 99;
  return cfg;
}

std::string csv_of(const ResultTable& rt) {
  std::ostringstream os;
  emit(rt, Format::csv, os);
  return os.str();
}

}  // namespace

TEST_CASE("output is identical for any number of workers") {
  ExperimentConfig cfg = small_config();
  cfg.jobs = 1;
  std::string one = csv_of(run_experiment(cfg));
  cfg.jobs = 3;
  std::string three = csv_of(run_experiment(cfg));
  CHECK(one == three);
  CHECK(one == csv_of(run_experiment(cfg)));
  cfg.seed = 100;
  CHECK(one != csv_of(run_experiment(cfg)));
}

TEST_CASE("CSV layout and round trip") {
  ResultTable rt = run_experiment(small_config());
  REQUIRE(rt.points.size() == 4);
  REQUIRE(rt.rows.size() == 160);
  std::string text = csv_of(rt);
  CHECK(text.rfind("trial,n,m,realized_mu,attempts,largest_component,largest_excess,total_excess,"
                   "complex_size,complex_diameter,complex_longest_path,complex_circumference,planar\n",
                   0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream is(text);
  std::vector<TrialRow> rows = parse_csv(is);
  REQUIRE(rows.size() == rt.rows.size());
  std::vector<PointAggregate> again = aggregate_rows(rows);
  REQUIRE(again.size() == rt.points.size());
  for (size_t i = 0; i < again.size(); ++i) CHECK(again[i].same_statistics(rt.points[i]));
  // trial indices are global: point index times trials plus the local index
  CHECK(rows[40].trial == 40);
  CHECK(rows.back().trial == 159);
}

TEST_CASE("rows obey the summary invariants") {
  ResultTable rt = run_experiment(small_config());
  for (const TrialRow& r : rt.rows) {
    const GraphSummary& s = r.summary;
    CHECK(s.attempts >= 1);
    CHECK(s.largest_component <= r.n);
    CHECK(s.complex_size <= r.n);
    if (s.complex_size == 0) {
      CHECK(s.total_excess == 0);
      CHECK(s.complex_diameter == -1);
      CHECK(s.planar);
    } else {
      CHECK(s.total_excess >= 1);
      CHECK(s.complex_diameter <= s.complex_longest_path);
      CHECK(s.complex_circumference <= s.complex_longest_path + 1);
      CHECK(s.complex_circumference >= 3);
    }
  }
}

TEST_CASE("JSON round trip keeps rows and aggregates") {
  ResultTable rt = run_experiment(small_config());
  std::stringstream ss;
  emit(rt, Format::json, ss);
  ResultTable back = parse_json(ss);
  CHECK(back.degrees == rt.degrees);
  REQUIRE(back.rows.size() == rt.rows.size());
  REQUIRE(back.points.size() == rt.points.size());
  for (size_t i = 0; i < back.points.size(); ++i) {
    CHECK(back.points[i].same_statistics(rt.points[i]));
    CHECK(back.points[i].same_statistics(aggregate_rows(back.rows)[i]));
  }
  std::istringstream bad("{\"rows\": 3");
  CHECK_THROWS_AS(parse_json(bad), Error);
}

TEST_CASE("file output") {
  std::string path = "critwin_test_output.csv";
  ResultTable rt = run_experiment(small_config());
  emit(rt, Format::csv, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == csv_of(rt));
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit(rt, Format::csv, std::string("/nonexistent-dir/x.csv")), Error);
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("malformed CSV is rejected") {
  std::istringstream wrong_header("a,b,c\n");
  CHECK_THROWS_AS(parse_csv(wrong_header), Error);
  ResultTable rt = run_experiment(small_config());
  std::string text = csv_of(rt);
  text += "1,2,3\n";
  std::istringstream short_row(text);
  CHECK_THROWS_AS(parse_csv(short_row), Error);
}

TEST_CASE("infeasible points are reported, not fatal") {
  ExperimentConfig cfg;
  cfg.degrees = "1,3";
  cfg.ns = {101, 100};
  cfg.mus = {0.0};
  cfg.trials = 5;
  ResultTable rt = run_experiment(cfg);
  REQUIRE(rt.points.size() == 2);
  CHECK_FALSE(rt.points[0].error.empty());
  CHECK(rt.points[0].trials == 0);
  CHECK(rt.points[1].error.empty());
  CHECK(rt.points[1].trials == 5);
  CHECK(rt.rows.size() == 5);

  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("explicit edge counts and duplicate points") {
  ExperimentConfig cfg;
  cfg.degrees = "1,3,5,7";
  cfg.ns = {100};
  cfg.ms = {70, 72, 72};
  cfg.trials = 3;
  ResultTable rt = run_experiment(cfg);
  REQUIRE(rt.points.size() == 3);
  CHECK(rt.points[0].m == 70);
  CHECK(rt.points[1].error.empty());
  CHECK_FALSE(rt.points[2].error.empty());
  CHECK(rt.rows.size() == 6);
}

TEST_CASE("comparison with the limit laws") {
  ExperimentConfig cfg;
  cfg.degrees = "1,3,5,7";
  cfg.ns = {1000, 2000};
  cfg.mus = {-2.0};
  cfg.trials = 200;
  ResultTable rt = run_experiment(cfg);
  CriticalPoint cp = critical_point(parse_degree_set(cfg.degrees));
  ComparisonReport rep = compare_theory(rt, cp, Variant::scaled_argument);
  REQUIRE(rep.points.size() == 2);
  for (const PointComparison& p : rep.points) {
    CHECK(p.survival_ok);
    CHECK(p.nonplanar_ok);
    CHECK(p.q_max >= 20);
    CHECK_FALSE(p.warnings.empty());  // fewer than 1000 trials
  }
  std::string text = format_report(rep);
  CHECK(text.find("survival") != std::string::npos);
}

TEST_CASE("discrepancy report") {
  std::vector<std::string> lines = variant_discrepancy_report(parse_degree_set("1,3"), {-1.0, 1.0});
  REQUIRE(lines.size() == 7);
  CHECK(lines[0].find("forms differ") != std::string::npos);
  CHECK(lines[1].find("mu=-1") != std::string::npos);
}
