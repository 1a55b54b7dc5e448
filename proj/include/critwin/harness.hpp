#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "critwin/asymptotics.hpp"
#include "critwin/sampler.hpp"
#include "critwin/stats.hpp"

namespace critwin {

struct ExperimentConfig {
  std::string degrees = "1,3,5,7";
  std::vector<long> ns = {1000};
  std::vector<double> mus;  // window positions; used when ms is empty
  std::vector<long> ms;     // explicit edge counts
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
  std::string format = "csv";
  Variant variant = Variant::scaled_argument;
  int qmax = 0;  // 0 selects q_max adaptively
  int max_attempts = 10000;
};

struct TrialRow {
  long trial = 0;
  long n = 0;
  long m = 0;
  double realized_mu = 0;  // rounded to 9 significant digits
  GraphSummary summary;
};

struct PointAggregate {
  long n = 0;
  long m = 0;
  double requested_mu = 0;
  double realized_mu = 0;
  long trials = 0;
  long no_complex = 0;
  double p_no_complex = 0;
  std::vector<long> excess_hist;  // index = total excess of the complex part
  long nonplanar = 0;
  double nonplanar_rate = 0;
  double mean_attempts = 0;
  long conditioned = 0;  // trials with a complex part
  double mean_diameter = 0, se_diameter = 0;
  double mean_longest_path = 0, se_longest_path = 0;
  double mean_circumference = 0, se_circumference = 0;
  std::vector<std::string> warnings;
  std::string error;

  bool same_statistics(const PointAggregate& o) const;
};

struct ResultTable {
  std::string degrees;
  std::vector<TrialRow> rows;
  std::vector<PointAggregate> points;
};

ResultTable run_experiment(const ExperimentConfig& cfg);

// Aggregates of consecutive rows sharing (n, m), in order of appearance.
std::vector<PointAggregate> aggregate_rows(const std::vector<TrialRow>& rows);

struct PointComparison {
  long n = 0;
  double mu = 0;  // realized
  long trials = 0;
  int q_max = 0;
  double survival_pred = 0, survival_emp = 0, survival_sigma = 0, survival_z = 0;
  bool survival_ok = false;
  double nonplanar_pred = 0, nonplanar_emp = 0, nonplanar_sigma = 0, nonplanar_z = 0;
  bool nonplanar_ok = false;
  double chi2 = 0;
  int chi2_dof = 0;
  double chi2_p = 1;
  bool chi2_ok = false;
  double other_variant_survival = 0;  // survival under the other printed form
  std::vector<std::string> warnings;
};

struct ScalingComparison {
  double mu = 0;
  long n_small = 0, n_large = 0;
  double ratio = 0;     // mean diameter, large over small
  double expected = 0;  // (n_large / n_small)^{1/3}
  double slope = 0;     // least squares of log mean diameter against log n
};

struct ComparisonReport {
  std::vector<PointComparison> points;
  std::vector<ScalingComparison> scaling;
};

// 3 sigma + 0.02 acceptance for survival and non-planarity, chi-square over
// excess bins 0..4 plus a tail bin.
ComparisonReport compare_theory(const ResultTable& rt, const CriticalPoint& cp, Variant variant, int qmax = 0);

enum class Format { csv, json };
Format parse_format(const std::string& s);

void emit(const ResultTable& rt, Format format, std::ostream& os);
void emit(const ResultTable& rt, Format format, const std::string& path);
std::vector<TrialRow> parse_csv(std::istream& is);
ResultTable parse_json(std::istream& is);

std::string format_report(const ComparisonReport& rep);

struct VerifyOptions {
  std::string degrees = "1,3,5,7";
  long n = 1000;
  int trials = 2000;
  std::uint64_t seed = 20240601;
  int jobs = 1;
};

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;  // informational lines such as variant discrepancies
  bool all_pass() const;
};

// The two printed forms of A_Delta at the given positions, with their gap.
std::vector<std::string> variant_discrepancy_report(const DegreeSet& ds, const std::vector<double>& mus);

VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace critwin
