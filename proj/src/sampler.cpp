#include "critwin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "critwin/error.hpp"

namespace critwin {

Rng make_trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    0x63726974u};
  return Rng(seq);
}

double realized_mu(const CriticalPoint& cp, long n, long m) {
  return (static_cast<double>(m) / (cp.alpha * n) - 1.0) * std::cbrt(static_cast<double>(n));
}

EdgeChoice edges_for_mu(const DegreeSet& ds, const CriticalPoint& cp, long n, double mu) {
  if (n < 1) throw Error(Errc::domain, "edges_for_mu needs n >= 1");
  EdgeChoice ec;
  ec.raw_m = std::llround(cp.alpha * n * (1.0 + mu / std::cbrt(static_cast<double>(n))));
  int p = periodicity(ds);
  for (int step = 0; step <= 2 * p; ++step) {
    long delta = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
    long m = ec.raw_m + delta;
    if (m < 0) continue;
    if (!check_condition_C(ds, n, m).pass) continue;
    ec.m = m;
    ec.realized_mu = realized_mu(cp, n, m);
    if (delta != 0) {
      std::ostringstream os;
      os << "m moved from " << ec.raw_m << " to " << m << " to satisfy the feasibility condition ("
         << check_condition_C(ds, n, ec.raw_m).message << ")";
      ec.warnings.push_back(os.str());
    }
    return ec;
  }
  std::ostringstream os;
  os << "no m within " << p << " of " << ec.raw_m << " is feasible for n=" << n << " and " << ds.describe() << " ("
     << check_condition_C(ds, n, ec.raw_m).message << ")";
  throw Error(Errc::infeasible, os.str());
}

double DPTable::logw(long i, long j) const {
  if (i < 0 || i > n_ || j < lo_[i] || j > hi_[i]) return kZero;
  long off = j - lo_[i];
  if (off % period_ != 0) return kZero;
  return cells_[row_offset_[i] + off / period_];
}

DPTable build_dp(const DegreeSet& ds, long n, long two_m) {
  if (n < 0 || two_m < 0) throw Error(Errc::domain, "build_dp needs n >= 0 and 2m >= 0");
  if (two_m > n * static_cast<long>(ds.max_degree()))
    throw Error(Errc::precondition, "build_dp: 2m exceeds n * max degree");
  DPTable dp;
  dp.n_ = n;
  dp.two_m_ = two_m;
  dp.degrees_ = ds.degrees_up_to(two_m);
  if (dp.degrees_.empty()) throw Error(Errc::infeasible, "build_dp: no degree fits into 2m");
  dp.dmin_ = dp.degrees_.front();
  dp.dmax_ = dp.degrees_.back();
  int g = 0;
  for (int d : dp.degrees_) g = std::gcd(g, d - dp.dmin_);
  dp.period_ = g == 0 ? 1 : g;
  for (int d : dp.degrees_) dp.log_inv_fact_.push_back(-std::lgamma(d + 1.0));

  dp.lo_.resize(n + 1);
  dp.hi_.resize(n + 1);
  dp.row_offset_.resize(n + 2);
  std::size_t total = 0;
  for (long i = 0; i <= n; ++i) {
    long lo = i * dp.dmin_;
    long need = two_m - (n - i) * static_cast<long>(dp.dmax_);  // cells below cannot reach 2m
    if (need > lo) lo += (need - lo + dp.period_ - 1) / dp.period_ * dp.period_;
    long hi = std::min(i * static_cast<long>(dp.dmax_), two_m);
    if (hi >= lo) hi = lo + (hi - lo) / dp.period_ * dp.period_;
    dp.lo_[i] = lo;
    dp.hi_[i] = hi;
    dp.row_offset_[i] = total;
    if (hi >= lo) total += static_cast<std::size_t>((hi - lo) / dp.period_ + 1);
  }
  dp.row_offset_[n + 1] = total;
  dp.cells_.assign(total, DPTable::kZero);
  if (total > 0 && dp.lo_[0] == 0) dp.cells_[0] = 0.0;

  std::vector<double> cand(dp.degrees_.size());
  for (long i = 1; i <= n; ++i) {
    for (long j = dp.lo_[i]; j <= dp.hi_[i]; j += dp.period_) {
      double mx = DPTable::kZero;
      std::size_t k = 0;
      for (std::size_t t = 0; t < dp.degrees_.size(); ++t) {
        double prev = dp.logw(i - 1, j - dp.degrees_[t]);
        if (prev == DPTable::kZero) continue;
        cand[k] = prev + dp.log_inv_fact_[t];
        mx = std::max(mx, cand[k]);
        ++k;
      }
      if (k == 0) continue;
      double s = 0;
      for (std::size_t t = 0; t < k; ++t) s += std::exp(cand[t] - mx);
      dp.cells_[dp.row_offset_[i] + (j - dp.lo_[i]) / dp.period_] = mx + std::log(s);
    }
  }
  if (!dp.feasible()) {
    std::ostringstream os;
    os << "no degree sequence in " << ds.describe() << " has n=" << n << " and sum " << two_m;
    throw Error(Errc::infeasible, os.str());
  }
  return dp;
}

namespace {

void fill_step(const DPTable& dp, long i, long j, std::vector<std::pair<int, double>>& out) {
  out.clear();
  double total = dp.logw(i, j);
  if (total == DPTable::kZero) {
    std::ostringstream os;
    os << "degree sampling reached an empty state (i=" << i << ", j=" << j << ")";
    throw Error(Errc::internal, os.str());
  }
  const auto& deg = dp.degrees();
  double s = 0;
  for (std::size_t t = 0; t < deg.size(); ++t) {
    double prev = dp.logw(i - 1, j - deg[t]);
    if (prev == DPTable::kZero) continue;
    double p = std::exp(prev + dp.log_inv_factorial(t) - total);
    out.emplace_back(deg[t], p);
    s += p;
  }
  if (out.empty() || !(s > 0)) {
    std::ostringstream os;
    os << "no degree has positive weight at (i=" << i << ", j=" << j << ")";
    throw Error(Errc::internal, os.str());
  }
  for (auto& [d, p] : out) p /= s;
}

}  // namespace

std::vector<std::pair<int, double>> step_distribution(const DPTable& dp, long i, long j) {
  std::vector<std::pair<int, double>> out;
  fill_step(dp, i, j, out);
  return out;
}

std::vector<int> sample_degree_sequence(const DPTable& dp, Rng& rng) {
  std::vector<int> seq(dp.n());
  std::vector<std::pair<int, double>> dist;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long j = dp.two_m();
  for (long i = dp.n(); i >= 1; --i) {
    fill_step(dp, i, j, dist);
    double u = unif(rng), acc = 0;
    int chosen = dist.back().first;
    for (auto [d, p] : dist) {
      acc += p;
      if (u < acc) {
        chosen = d;
        break;
      }
    }
    seq[i - 1] = chosen;
    j -= chosen;
  }
  if (j != 0) throw Error(Errc::internal, "sampled degree sequence does not sum to 2m");
  return seq;
}

std::vector<std::pair<int, int>> pair_configuration(std::span<const int> seq, Rng& rng) {
  long total = 0;
  for (int d : seq) {
    if (d < 0) throw Error(Errc::domain, "negative degree in sequence");
    total += d;
  }
  if (total % 2 != 0) throw Error(Errc::precondition, "pair_configuration needs an even degree sum");
  std::vector<int> stubs;
  stubs.reserve(total);
  for (std::size_t v = 0; v < seq.size(); ++v)
    for (int k = 0; k < seq[v]; ++k) stubs.push_back(static_cast<int>(v) + 1);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<std::pair<int, int>> edges(total / 2);
  for (long k = 0; k < total / 2; ++k) edges[k] = {stubs[2 * k], stubs[2 * k + 1]};
  return edges;
}

bool is_simple(const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<int, int>> e;
  e.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) return false;
    e.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(e.begin(), e.end());
  return std::adjacent_find(e.begin(), e.end()) == e.end();
}

SampledGraph sample_simple_graph(const DPTable& dp, Rng& rng, int max_attempts) {
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<int> seq = sample_degree_sequence(dp, rng);
    auto edges = pair_configuration(seq, rng);
    if (!is_simple(edges)) continue;
    return {Graph(static_cast<int>(dp.n()), edges), attempt};
  }
  std::ostringstream os;
  os << "no simple graph after " << max_attempts << " attempts (n=" << dp.n() << ", 2m=" << dp.two_m() << ")";
  throw Error(Errc::max_attempts, os.str());
}

SampledGraph sample_simple_graph(const DegreeSet& ds, long n, long m, Rng& rng, int max_attempts) {
  ConditionDiagnosis dx = check_condition_C(ds, n, m);
  if (!dx.pass) throw Error(Errc::infeasible, "sample_simple_graph: " + dx.message);
  return sample_simple_graph(build_dp(ds, n, 2 * m), rng, max_attempts);
}

double exact_sequence_probability(const DegreeSet& ds, long n, long m, std::span<const int> seq) {
  if (n > 12) throw Error(Errc::size_guard, "exact_sequence_probability enumerates sequences only for n <= 12");
  if (static_cast<long>(seq.size()) != n) throw Error(Errc::domain, "sequence length differs from n");
  long two_m = 2 * m;
  std::vector<int> deg = ds.degrees_up_to(two_m);
  std::vector<double> inv_fact;
  for (int d : deg) inv_fact.push_back(1.0 / std::tgamma(d + 1.0));

  double total = 0;
  // depth-first over all sequences, pruning partial sums above 2m
  std::vector<double> prod(n + 1, 1.0);
  std::vector<std::size_t> choice(n, 0);
  std::vector<long> partial(n + 1, 0);
  long depth = 0;
  if (n == 0) total = (two_m == 0) ? 1.0 : 0.0;
  while (depth >= 0 && n > 0) {
    if (choice[depth] >= deg.size()) {
      choice[depth] = 0;
      --depth;
      if (depth >= 0) ++choice[depth];
      continue;
    }
    long s = partial[depth] + deg[choice[depth]];
    if (s > two_m) {
      choice[depth] = deg.size();
      continue;
    }
    double pr = prod[depth] * inv_fact[choice[depth]];
    if (depth == n - 1) {
      if (s == two_m) total += pr;
      ++choice[depth];
      continue;
    }
    partial[depth + 1] = s;
    prod[depth + 1] = pr;
    ++depth;
  }
  if (!(total > 0)) throw Error(Errc::infeasible, "exact_sequence_probability: no sequence has sum 2m");

  long sum = 0;
  double num = 1.0;
  for (int d : seq) {
    if (!ds.contains(d)) return 0.0;
    sum += d;
    num /= std::tgamma(d + 1.0);
  }
  if (sum != two_m) return 0.0;
  return num / total;
}

}  // namespace critwin
