#include <doctest.h>

#include <random>

#include "critwin/error.hpp"
#include "critwin/stats.hpp"
#include "oracles.hpp"

using namespace critwin;

TEST_CASE("complex-part statistics against exhaustive search") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 300) {
    int n = 4 + static_cast<int>(rng() % 9);
    int m = n + static_cast<int>(rng() % 7) - 1;
    oracle::Edges e = oracle::random_graph(n, m, rng);
    oracle::ComplexStats want = oracle::complex_stats(n, e);
    if (!want.has_complex) continue;
    ++checked;
    GraphSummary got = summarize(Graph(n, e));
    CHECK(got.total_excess == want.total_excess);
    CHECK(got.complex_size == want.size);
    CHECK(got.complex_diameter == want.diameter);
    CHECK(got.complex_longest_path == want.longest_path);
    CHECK(got.complex_circumference == want.circumference);
    CHECK(got.planar == oracle::planar(n, e));
  }
}

TEST_CASE("sparse graphs with long trees and chains") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 150; ++t) {
    int n = 14 + static_cast<int>(rng() % 8);
    oracle::Edges e = oracle::random_graph(n, n + 1 + static_cast<int>(rng() % 2), rng);
    oracle::ComplexStats want = oracle::complex_stats(n, e);
    GraphSummary got = summarize(Graph(n, e));
    if (!want.has_complex) {
      CHECK(got.complex_size == 0);
      CHECK(got.complex_diameter == -1);
      CHECK(got.complex_longest_path == -1);
      continue;
    }
    CHECK(got.complex_diameter == want.diameter);
    CHECK(got.complex_longest_path == want.longest_path);
    CHECK(got.complex_circumference == want.circumference);
  }
}

TEST_CASE("planarity against Boyer-Myrvold") {
  CHECK_FALSE(is_planar_simple(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  CHECK_FALSE(is_planar_simple(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}));
  std::vector<std::pair<int, int>> petersen = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                               {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  CHECK_FALSE(is_planar_simple(10, petersen));
  CHECK(is_planar_simple(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));

  std::mt19937_64 rng(9);
  int nonplanar = 0;
  for (int t = 0; t < 400; ++t) {
    int n = 8 + static_cast<int>(rng() % 60);
    int m = n + static_cast<int>(rng() % (n + 6));
    oracle::Edges e = oracle::random_graph(n, m, rng);
    bool want = oracle::planar(n, e);
    nonplanar += !want;
    CHECK(summarize(Graph(n, e)).planar == want);
  }
  CHECK(nonplanar > 50);
}

TEST_CASE("kernel planarity with loops and parallel edges") {
  CHECK(is_planar(make_kernel({1}, {{1, 1, 3}, {1, 1, 4}})));
  CHECK(is_planar(make_kernel({1, 2}, {{1, 2, 1}, {1, 2, 2}, {1, 2, 3}, {1, 2, 4}})));
  // K_{3,3} with every edge doubled stays non-planar
  std::vector<std::array<int, 3>> e;
  for (int a = 1; a <= 3; ++a)
    for (int b = 4; b <= 6; ++b) {
      e.push_back({a, b, 1});
      e.push_back({a, b, 2});
    }
  CHECK_FALSE(is_planar(make_kernel({1, 2, 3, 4, 5, 6}, e)));
}

TEST_CASE("longest path and circumference on explicit kernels") {
  // theta with path lengths 3, 1, 2 and no trees
  KernelMultigraph k = make_kernel({1, 2}, {{1, 2, 3}, {1, 2, 1}, {1, 2, 2}});
  CHECK(circumference(k) == 5);
  CHECK(longest_path(k) == 4);  // all five vertices
  KernelMultigraph loops = make_kernel({1}, {{1, 1, 4}, {1, 1, 6}});
  CHECK(circumference(loops) == 6);
  CHECK(longest_path(loops) == 8);
}

TEST_CASE("enumeration guard") {
  std::vector<std::array<int, 3>> e;
  for (int i = 1; i <= 14; ++i) e.push_back({1, 1, 3});
  KernelMultigraph big = make_kernel({1}, e);
  CHECK(big.excess == 13);
  CHECK_THROWS_AS(longest_path(big), Error);
  CHECK_THROWS_AS(circumference(big), Error);
  CHECK(longest_path(big, 20) == 4);
}

TEST_CASE("summary of a graph without complex part") {
  Graph g(6, {{1, 2}, {2, 3}, {3, 1}, {4, 5}});
  GraphSummary s = summarize(g, 3);
  CHECK(s.largest_component == 3);
  CHECK(s.largest_excess == 0);
  CHECK(s.total_excess == 0);
  CHECK(s.complex_size == 0);
  CHECK(s.complex_diameter == -1);
  CHECK(s.planar);
  CHECK(s.attempts == 3);
}
