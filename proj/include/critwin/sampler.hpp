#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critwin/critical.hpp"
#include "critwin/graph.hpp"

namespace critwin {

using Rng = std::mt19937_64;

// Trial-local generator: a deterministic function of (seed, trial index) only.
Rng make_trial_rng(std::uint64_t seed, std::uint64_t trial);

struct EdgeChoice {
  long m = 0;
  long raw_m = 0;
  double realized_mu = 0;
  std::vector<std::string> warnings;
};

// m = round(alpha n (1 + mu n^{-1/3})) moved by the smallest |delta| <= p
// that satisfies the feasibility condition.
EdgeChoice edges_for_mu(const DegreeSet& ds, const CriticalPoint& cp, long n, double mu);
double realized_mu(const CriticalPoint& cp, long n, long m);

// Log-space table of S_{i,j} = sum_d S_{i-1,j-d}/d!. Only cells that can be
// non-zero are stored: row i keeps j in [i min, min(i max, 2m)] with
// j = i min (mod p).
class DPTable {
 public:
  static constexpr double kZero = -std::numeric_limits<double>::infinity();

  long n() const { return n_; }
  long two_m() const { return two_m_; }
  double logw(long i, long j) const;
  const std::vector<int>& degrees() const { return degrees_; }
  // log(1/d!) for degrees()[t]
  double log_inv_factorial(std::size_t t) const { return log_inv_fact_[t]; }
  bool feasible() const { return logw(n_, two_m_) != kZero; }
  std::size_t stored_cells() const { return cells_.size(); }

 private:
  friend DPTable build_dp(const DegreeSet& ds, long n, long two_m);
  long n_ = 0;
  long two_m_ = 0;
  int dmin_ = 0;
  int dmax_ = 0;
  int period_ = 1;
  std::vector<int> degrees_;
  std::vector<double> log_inv_fact_;  // indexed by position in degrees_
  std::vector<long> lo_, hi_;
  std::vector<std::size_t> row_offset_;
  std::vector<double> cells_;
};

DPTable build_dp(const DegreeSet& ds, long n, long two_m);

// Distribution of the degree of vertex i given that the first i vertices carry
// j half-edges: P(d) = S_{i-1,j-d} / (d! S_{i,j}).
std::vector<std::pair<int, double>> step_distribution(const DPTable& dp, long i, long j);

std::vector<int> sample_degree_sequence(const DPTable& dp, Rng& rng);

// Uniform perfect matching of the half-edges; loops and multi-edges kept.
std::vector<std::pair<int, int>> pair_configuration(std::span<const int> seq, Rng& rng);
bool is_simple(const std::vector<std::pair<int, int>>& edges);

struct SampledGraph {
  Graph graph;
  int attempts = 0;
};

SampledGraph sample_simple_graph(const DPTable& dp, Rng& rng, int max_attempts = 10000);
SampledGraph sample_simple_graph(const DegreeSet& ds, long n, long m, Rng& rng, int max_attempts = 10000);

// (prod 1/d_v!) / S_{n,2m} with S_{n,2m} obtained by enumerating every degree
// sequence; independent of DPTable. n <= 12.
double exact_sequence_probability(const DegreeSet& ds, long n, long m, std::span<const int> seq);

}  // namespace critwin
