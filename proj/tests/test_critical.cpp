#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "critwin/critical.hpp"
#include "critwin/error.hpp"
#include "oracles.hpp"

using namespace critwin;
using cd = std::complex<double>;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// n! [z^n] f by the trapezoidal rule on the circle |z| = radius.
template <class F>
double egf_coefficient(F f, int n, double radius, int points = 128) {
  cd acc = 0;
  for (int k = 0; k < points; ++k) {
    double th = 2 * std::numbers::pi * k / points;
    acc += f(std::polar(radius, th)) * std::polar(1.0, -n * th);
  }
  return (acc / static_cast<double>(points)).real() / std::pow(radius, n) * factorial(n);
}

}  // namespace

TEST_CASE("critical constants of reference sets") {
  CriticalPoint a = critical_point(parse_degree_set("1,3,5,7"));
  CHECK(a.zhat == doctest::Approx(1.20002952393).epsilon(1e-10));
  CHECK(a.alpha == doctest::Approx(0.719696246515).epsilon(1e-10));
  CHECK(a.t3 == doctest::Approx(1.19728042427).epsilon(1e-10));
  CHECK(a.c2 == doctest::Approx(1.84449779947).epsilon(1e-10));
  CHECK(a.c3 == doctest::Approx(0.689359541983).epsilon(1e-10));
  CHECK(a.rho == doctest::Approx(0.662783052837).epsilon(1e-10));
  CHECK(critical_point(parse_degree_set("0,1,4,5")).alpha == doctest::Approx(0.381514241147).epsilon(1e-10));
  CHECK(critical_point(parse_degree_set("pow2:64")).alpha == doctest::Approx(0.795796088066).epsilon(1e-10));
  CriticalPoint all = critical_point(parse_degree_set("all:60"));
  CriticalPoint er = CriticalPoint::erdos_renyi();
  CHECK(std::abs(all.zhat - 1) < 1e-12);
  CHECK(std::abs(all.alpha - 0.5) < 1e-12);
  CHECK(std::abs(all.t3 - er.t3) < 1e-12);
  CHECK(std::abs(all.c2 - er.c2) < 1e-12);
  CHECK(std::abs(all.c3 - er.c3) < 1e-12);
  CHECK(std::abs(all.rho - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("closed form for {1,3}") {
  CriticalPoint cp = critical_point(parse_degree_set("1,3"));
  CHECK(std::abs(cp.zhat - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(cp.alpha - 0.75) < 1e-12);
  CHECK(std::abs(cp.t3 - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(cp.c2 - 1.5) < 1e-12);
  CHECK(std::abs(cp.c3 - 0.5) < 1e-12);
}

TEST_CASE("tree function at and beyond the singularity") {
  DegreeSet ds = parse_degree_set("1,3,5,7");
  CriticalPoint cp = critical_point(ds);
  CHECK(tree_T(ds, cp, 1, cp.rho) == doctest::Approx(cp.zhat).epsilon(1e-12));
  CHECK(tree_T(ds, cp, 2, cp.rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tree_T(ds, cp, 1, 0.0) == 0.0);
  CHECK_THROWS_AS(tree_T(ds, cp, 1, cp.rho * 1.01), Error);
  CHECK_THROWS_AS(unicycle_V(ds, cp, cp.rho), Error);
  double z = 0.3, T1 = tree_T(ds, cp, 1, z);
  CHECK(T1 == doctest::Approx(z * egf_eval(ds, T1, 1)).epsilon(1e-14));
}

TEST_CASE("tree and unicycle coefficients against brute-force counts") {
  for (const char* spec : {"1,3", "1,2,3", "0,1,4,5", "0..4"}) {
    DegreeSet ds = parse_degree_set(spec);
    CriticalPoint cp = critical_point(ds);
    double radius = 0.5 * cp.rho;
    auto T1 = [&](cd z) { return tree_T(ds, cp, 1, z); };
    auto U = [&](cd z) {
      cd t = tree_T(ds, cp, 1, z);
      return z * egf_raw(ds, t, 0) - t * t / 2.0;
    };
    auto V = [&](cd z) {
      cd t2 = tree_T(ds, cp, 2, z);
      return 0.5 * (-std::log(1.0 - t2) - t2 - t2 * t2 / 2.0);
    };
    for (int n = 1; n <= 7; ++n) {
      CHECK_MESSAGE(egf_coefficient(T1, n, radius) == doctest::Approx(oracle::rooted_trees(ds, n)).epsilon(1e-8),
                    spec << " rooted n=" << n);
      CHECK_MESSAGE(egf_coefficient(U, n, radius) == doctest::Approx(oracle::unrooted_trees(ds, n)).epsilon(1e-8),
                    spec << " unrooted n=" << n);
    }
    for (int n = 3; n <= 7; ++n)
      CHECK_MESSAGE(egf_coefficient(V, n, radius) == doctest::Approx(oracle::unicyclic_graphs(ds, n)).epsilon(1e-8),
                    spec << " unicyclic n=" << n);
    double z = 0.7 * cp.rho;
    CHECK(unicycle_V(ds, cp, z) == doctest::Approx(V(cd(z, 0)).real()).epsilon(1e-12));
    CHECK(unrooted_U(ds, cp, z) == doctest::Approx(U(cd(z, 0)).real()).epsilon(1e-12));
  }
}

TEST_CASE("saddle roots") {
  DegreeSet ds = parse_degree_set("1,3,5,7");
  CriticalPoint cp = critical_point(ds);
  for (double r : {0.55, 0.6, 0.7, 0.9, 1.5}) {
    double z = root1(ds, r);
    CHECK(phi0(ds, z) == doctest::Approx(2 * r).epsilon(1e-12));
  }
  CHECK(root1(ds, cp.alpha) == doctest::Approx(cp.zhat).epsilon(1e-10));
  CHECK(saddle_roots(ds, cp.alpha).double_root);
  CHECK_FALSE(saddle_roots(ds, 0.6).double_root);
  CHECK_THROWS_AS(root1(ds, 0.5), Error);
  CHECK_THROWS_AS(root1(ds, 3.5), Error);
}

TEST_CASE("h and its derivative") {
  DegreeSet er = parse_degree_set("all:60");
  CHECK(h_eval(er, cd(1.0, 0.0), 0.5).real() == doctest::Approx(1.0).epsilon(1e-13));

  DegreeSet ds = parse_degree_set("1,3,5,7");
  double r = 0.6;
  for (cd z : {cd(0.8, 0.3), cd(0.5, -0.7), cd(1.1, 0.01)})
    CHECK(h_real(ds, z, r) == doctest::Approx(h_eval(ds, z, r).real()).epsilon(1e-13));
  for (double z : {0.4, 0.9, 1.3}) {
    double h = 1e-6;
    double fd = (h_eval(ds, cd(z + h, 0), r).real() - h_eval(ds, cd(z - h, 0), r).real()) / (2 * h);
    CHECK(h_derivative(ds, z, r) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(std::abs(h_derivative(ds, root1(ds, r), r)) < 1e-12);
  CHECK(std::abs(h_derivative(ds, critical_point(ds).zhat, r)) < 1e-12);
  CHECK_THROWS_AS(h_eval(ds, cd(-0.5, 0.0), r), Error);
  try {
    h_eval(ds, cd(-0.5, 0.0), r);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::branch_cut);
  }
}

TEST_CASE("maximum of Re h on circles sits at the p-th roots of unity") {
  DegreeSet ds = parse_degree_set("1,3,5,7");
  PetrovProfile p = petrov_profile(ds, 0.8, 0.7, 4096);
  CHECK(p.holds);
  CHECK(p.period == 2);
  CHECK(p.argmax.size() == 2);
  DegreeSet q = parse_degree_set("0,1,4,5");
  CHECK(petrov_profile(q, 0.3, 0.3, 4096).holds);
  // period 3 does not divide 4096, so two of the peaks fall between grid points
  PetrovProfile t = petrov_profile(parse_degree_set("1,4,7"), 0.0862891, 0.925895, 4096);
  CHECK(t.holds);
  CHECK(t.argmax.size() == 3);
  CHECK(t.margin > 0);
  CHECK_THROWS_AS(petrov_profile(ds, 5.0, 0.7, 4096), Error);
  CHECK_THROWS_AS(petrov_profile(ds, 0.8, 0.7, 4), Error);
}
