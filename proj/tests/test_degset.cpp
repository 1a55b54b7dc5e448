#include <doctest.h>

#include <cmath>
#include <set>

#include "critwin/degset.hpp"
#include "critwin/error.hpp"

using namespace critwin;

TEST_CASE("parse lists, ranges and rules") {
  CHECK(parse_degree_set("7,1,5,3,3").degrees() == std::vector<int>{1, 3, 5, 7});
  CHECK(parse_degree_set(" 0..4 ").degrees() == std::vector<int>{0, 1, 2, 3, 4});
  DegreeSet p = parse_degree_set("pow2:64");
  CHECK(p.is_rule());
  CHECK(p.degrees() == std::vector<int>{1, 2, 4, 8, 16, 32, 64});
  CHECK(p.extended_degrees().back() == 128);
  CHECK(p.describe() == "pow2:64");
  DegreeSet all = parse_degree_set("all:60");
  CHECK(all.degrees().size() == 61);
  CHECK(all.min_degree() == 0);
  CHECK(parse_degree_set("odd:9").degrees() == std::vector<int>{1, 3, 5, 7, 9});
  CHECK(parse_degree_set("1,3").describe() == "{1,3}");
}

TEST_CASE("invalid degree sets are rejected") {
  auto code = [](const char* s) {
    try {
      parse_degree_set(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::internal;
  };
  CHECK(code("2,3,4") == Errc::invalid_degree_set);  // 1 missing
  CHECK(code("0,1,2") == Errc::invalid_degree_set);  // no degree above 2
  CHECK(code("even:10") == Errc::invalid_degree_set);
  CHECK(code("1,x") == Errc::parse);
  CHECK(code("5..2") == Errc::parse);
  CHECK(code("fib:10") == Errc::parse);
  CHECK(code("") == Errc::invalid_degree_set);
}

TEST_CASE("egf and derivatives against direct sums") {
  DegreeSet ds = parse_degree_set("1,3,5,7");
  double z = 0.9;
  double w = z + std::pow(z, 3) / 6 + std::pow(z, 5) / 120 + std::pow(z, 7) / 5040;
  double w1 = 1 + z * z / 2 + std::pow(z, 4) / 24 + std::pow(z, 6) / 720;
  double w2 = z + std::pow(z, 3) / 6 + std::pow(z, 5) / 120;
  CHECK(egf_eval(ds, z, 0) == doctest::Approx(w).epsilon(1e-15));
  CHECK(egf_eval(ds, z, 1) == doctest::Approx(w1).epsilon(1e-15));
  CHECK(phi0(ds, z) == doctest::Approx(z * w1 / w).epsilon(1e-15));
  CHECK(phi1(ds, z) == doctest::Approx(z * w2 / w1).epsilon(1e-15));

  DegreeSet all = parse_degree_set("all:60");
  CHECK(egf_eval(all, 1.0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(phi1(all, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  std::complex<double> zc(0.3, 0.4);
  std::complex<double> direct = zc + zc * zc * zc / 6.0 + std::pow(zc, 5) / 120.0 + std::pow(zc, 7) / 5040.0;
  CHECK(std::abs(egf_raw(ds, zc, 0) - direct) < 1e-15);
}

TEST_CASE("truncated rule sets detect instability") {
  DegreeSet small = parse_degree_set("all:8");
  CHECK_THROWS_AS(egf_eval(small, 5.0, 0), Error);
  CHECK_NOTHROW(egf_eval(small, 0.1, 0));
  CHECK_THROWS_AS(egf_eval(small, -1.0, 0), Error);
}

TEST_CASE("periodicity") {
  CHECK(periodicity(parse_degree_set("1,3,5,7")) == 2);
  CHECK(periodicity(parse_degree_set("1,4,7")) == 3);
  CHECK(periodicity(parse_degree_set("0,1,4,5")) == 1);
  CHECK(periodicity(parse_degree_set("pow2:64")) == 1);
}

TEST_CASE("feasibility condition implies a degree sequence exists") {
  for (const char* spec : {"1,3", "1,3,5,7", "0,1,4,5", "1,4,7", "1,2,3"}) {
    DegreeSet ds = parse_degree_set(spec);
    for (long n = 2; n <= 9; ++n) {
      // reachable degree sums with n vertices
      std::set<long> sums = {0};
      for (long i = 0; i < n; ++i) {
        std::set<long> next;
        for (long s : sums)
          for (int d : ds.degrees()) next.insert(s + d);
        sums = std::move(next);
      }
      for (long m = 0; m <= n * ds.max_degree() / 2; ++m) {
        ConditionDiagnosis dx = check_condition_C(ds, n, m);
        if (dx.pass) CHECK_MESSAGE(sums.count(2 * m), spec << " n=" << n << " m=" << m);
        if (!dx.divisibility_ok) CHECK(sums.count(2 * m) == 0);
      }
    }
  }
  ConditionDiagnosis dx = check_condition_C(parse_degree_set("1,3"), 5, 4);
  CHECK_FALSE(dx.pass);
  CHECK_FALSE(dx.divisibility_ok);
  CHECK(dx.message.find("period 2") != std::string::npos);
}
