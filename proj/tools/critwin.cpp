#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critwin/asymptotics.hpp"
#include "critwin/error.hpp"
#include "critwin/harness.hpp"
#include "critwin/sampler.hpp"

using namespace critwin;

namespace {

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse:
    case Errc::invalid_degree_set:
    case Errc::infeasible:
    case Errc::precondition:
    case Errc::domain:
    case Errc::out_of_range:
      return 2;
    default:
      return 1;
  }
}

void print_threshold(const std::string& degrees, bool as_json) {
  DegreeSet ds = parse_degree_set(degrees);
  CriticalPoint cp = critical_point(ds);
  if (as_json) {
    nlohmann::json j = {{"degrees", ds.describe()}, {"zhat", cp.zhat},   {"alpha", cp.alpha},
                        {"t3", cp.t3},              {"c2", cp.c2},       {"c3", cp.c3},
                        {"rho", cp.rho},            {"period", periodicity(ds)},
                        {"truncation_bound", cp.effective_bound}};
    std::cout << j.dump(1) << "\n";
    return;
  }
  std::cout << std::setprecision(12) << "degrees  " << ds.describe() << "\n"
            << "zhat     " << cp.zhat << "\n"
            << "alpha    " << cp.alpha << "\n"
            << "t3       " << cp.t3 << "\n"
            << "C2       " << cp.c2 << "\n"
            << "C3       " << cp.c3 << "\n"
            << "rho      " << cp.rho << "\n"
            << "period   " << periodicity(ds) << "\n";
  if (ds.is_rule()) std::cout << "bound    " << cp.effective_bound << "\n";
}

void print_prediction(const CriticalPoint& cp, double mu, Variant v, int qmax, bool as_json, nlohmann::json& arr) {
  int q = qmax > 0 ? qmax : adaptive_qmax(cp, mu, v);
  TheoryPrediction tp = predict(cp, mu, v, q);
  if (as_json) {
    arr.push_back({{"mu", mu},
                   {"variant", variant_name(v)},
                   {"q_max", tp.q_max},
                   {"survival", tp.survival},
                   {"excess_distribution", tp.excess_dist},
                   {"planarity", tp.planarity},
                   {"tail_weight", tp.tail_weight},
                   {"warnings", tp.warnings}});
    return;
  }
  std::cout << std::setprecision(10) << "mu=" << mu << " form=" << variant_name(v) << " q_max=" << tp.q_max << "\n"
            << "  P(no complex component) " << tp.survival << "\n"
            << "  P(planar)               " << tp.planarity << "\n"
            << "  excess distribution    ";
  for (int k = 0; k < std::min<int>(8, tp.excess_dist.size()); ++k) std::cout << " " << tp.excess_dist[k];
  std::cout << "\n";
  for (const auto& w : tp.warnings) std::cout << "  warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random graphs with degree constraints near the critical window"};
  app.set_config("--config", "", "read options from an INI file (key = value)");
  app.require_subcommand(1);

  std::string degrees = "1,3,5,7";
  bool json_out = false;

  auto* th = app.add_subcommand("threshold", "critical constants for a degree set");
  th->add_option("--degrees", degrees, "degree set: list, range a..b, or rule all|pow2|odd|even[:bound]");
  th->add_flag("--json", json_out, "JSON output");

  std::vector<double> mus;
  std::string variant_s = "scaled";
  int qmax = 0;
  auto* pr = app.add_subcommand("predict", "limit laws inside the critical window");
  pr->add_option("--degrees", degrees, "degree set");
  pr->add_option("--mu", mus, "window positions")->required();
  pr->add_option("--variant", variant_s, "form of A_Delta: scaled, plain or both")
      ->check(CLI::IsMember({"scaled", "plain", "both"}));
  pr->add_option("--qmax", qmax, "excess truncation (0 picks it from the tail weight)");
  pr->add_flag("--json", json_out, "JSON output");

  long n = 1000, m = -1;
  double mu = 0;
  std::uint64_t seed = 1;
  int count = 1;
  std::string out;
  auto* sa = app.add_subcommand("sample", "draw uniform simple graphs as JSON lines");
  sa->add_option("--degrees", degrees, "degree set");
  sa->add_option("--n", n, "number of vertices");
  auto* mu_opt = sa->add_option("--mu", mu, "window position");
  sa->add_option("--m", m, "edge count")->excludes(mu_opt);
  sa->add_option("--seed", seed, "seed");
  sa->add_option("--count", count, "number of graphs")->check(CLI::PositiveNumber);
  sa->add_option("--out", out, "output file (default stdout)");

  ExperimentConfig cfg;
  std::vector<long> ns;
  bool csv_flag = false;
  auto* ex = app.add_subcommand("experiment", "Monte Carlo runs compared with the limit laws");
  ex->add_option("--degrees", cfg.degrees, "degree set");
  ex->add_option("--n", ns, "numbers of vertices");
  auto* exmu = ex->add_option("--mu", cfg.mus, "window positions");
  ex->add_option("--m", cfg.ms, "explicit edge counts")->excludes(exmu);
  ex->add_option("--trials", cfg.trials, "trials per point")->check(CLI::PositiveNumber);
  ex->add_option("--seed", cfg.seed, "seed");
  ex->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  ex->add_option("--out", cfg.out, "per-trial table (default stdout)");
  ex->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ex->add_flag("--json", json_out, "same as --format json");
  ex->add_flag("--csv", csv_flag, "same as --format csv");
  ex->add_option("--variant", variant_s, "form of A_Delta for the comparison: scaled, plain or both")
      ->check(CLI::IsMember({"scaled", "plain", "both"}));
  ex->add_option("--qmax", cfg.qmax, "excess truncation (0 picks it from the tail weight)");
  ex->add_option("--max-attempts", cfg.max_attempts, "rejection limit per graph");

  VerifyOptions vo;
  auto* ve = app.add_subcommand("verify", "self-checks of constants, laws and sampler");
  ve->add_option("--degrees", vo.degrees, "degree set for the Monte Carlo check");
  ve->add_option("--n", vo.n, "vertices for the Monte Carlo check");
  ve->add_option("--trials", vo.trials, "trials for the Monte Carlo check")->check(CLI::PositiveNumber);
  ve->add_option("--seed", vo.seed, "seed");
  ve->add_option("--jobs", vo.jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (th->parsed()) {
      print_threshold(degrees, json_out);
      return 0;
    }
    if (pr->parsed()) {
      CriticalPoint cp = critical_point(parse_degree_set(degrees));
      nlohmann::json arr = nlohmann::json::array();
      for (double x : mus) {
        if (variant_s != "plain") print_prediction(cp, x, Variant::scaled_argument, qmax, json_out, arr);
        if (variant_s != "scaled") print_prediction(cp, x, Variant::plain_exponential, qmax, json_out, arr);
      }
      if (json_out) std::cout << arr.dump(1) << "\n";
      return 0;
    }
    if (sa->parsed()) {
      DegreeSet ds = parse_degree_set(degrees);
      CriticalPoint cp = critical_point(ds);
      if (m < 0) {
        EdgeChoice ec = edges_for_mu(ds, cp, n, mu);
        for (const auto& w : ec.warnings) std::cerr << "warning: " << w << "\n";
        m = ec.m;
      } else {
        ConditionDiagnosis dx = check_condition_C(ds, n, m);
        if (!dx.pass) throw Error(Errc::infeasible, dx.message);
      }
      DPTable dp = build_dp(ds, n, 2 * m);
      std::ofstream file;
      if (!out.empty()) {
        file.open(out, std::ios::binary);
        if (!file) throw Error(Errc::io, "cannot open '" + out + "'");
      }
      std::ostream& os = out.empty() ? std::cout : file;
      for (int t = 0; t < count; ++t) {
        Rng rng = make_trial_rng(seed, t);
        SampledGraph sg = sample_simple_graph(dp, rng);
        os << to_json_line(sg.graph) << "\n";
      }
      return 0;
    }
    if (ex->parsed()) {
      if (!ns.empty()) cfg.ns = ns;
      if (json_out) cfg.format = "json";
      if (csv_flag) cfg.format = "csv";
      if (cfg.mus.empty() && cfg.ms.empty()) cfg.mus = {0.0};
      Format fmt = parse_format(cfg.format);
      ResultTable rt = run_experiment(cfg);
      if (cfg.out.empty())
        emit(rt, fmt, std::cout);
      else
        emit(rt, fmt, cfg.out);
      bool any_error = false;
      for (const PointAggregate& a : rt.points) {
        for (const auto& w : a.warnings) std::cerr << "warning: n=" << a.n << " m=" << a.m << ": " << w << "\n";
        if (!a.error.empty()) {
          std::cerr << "error: n=" << a.n << " mu=" << a.requested_mu << ": " << a.error << "\n";
          any_error = true;
        }
      }
      CriticalPoint cp = critical_point(parse_degree_set(cfg.degrees));
      if (variant_s != "plain")
        std::cerr << format_report(compare_theory(rt, cp, Variant::scaled_argument, cfg.qmax));
      if (variant_s != "scaled") {
        std::cerr << "-- plain exponential form --\n";
        std::cerr << format_report(compare_theory(rt, cp, Variant::plain_exponential, cfg.qmax));
      }
      bool all_failed = !rt.points.empty();
      for (const PointAggregate& a : rt.points)
        if (a.trials > 0) all_failed = false;
      return any_error && all_failed ? 2 : 0;
    }
    if (ve->parsed()) {
      VerifyReport rep = run_verify(vo);
      for (const CheckLine& c : rep.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      for (const std::string& s : rep.notes) std::cout << "note " << s << "\n";
      return rep.all_pass() ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
