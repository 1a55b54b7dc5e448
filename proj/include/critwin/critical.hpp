#pragma once

#include <complex>
#include <vector>

#include "critwin/degset.hpp"

namespace critwin {

struct CriticalPoint {
  double zhat = 0;   // root of phi1(z) = 1
  double alpha = 0;  // phi0(zhat) / 2
  double t3 = 0;     // zhat w'''(zhat) / w'(zhat)
  double c2 = 0;     // t3 alpha zhat / (2 (1 - alpha))
  double c3 = 0;     // 2 t3 alpha zhat / 3
  double rho = 0;    // zhat / w'(zhat), singularity of the tree function
  int effective_bound = 0;

  // Constants for w = e^z.
  static CriticalPoint erdos_renyi();
};

CriticalPoint critical_point(const DegreeSet& ds);

// Tree functions T_l(z) = z w^(l)(T_1(z)) with T_1 = z w'(T_1), 0 <= z <= rho.
double tree_T(const DegreeSet& ds, const CriticalPoint& cp, int ell, double z);
double tree_T(const DegreeSet& ds, int ell, double z);
// Complex version for |z| < rho, used for coefficient extraction.
std::complex<double> tree_T(const DegreeSet& ds, const CriticalPoint& cp, int ell, std::complex<double> z);

double unrooted_U(const DegreeSet& ds, const CriticalPoint& cp, double z);
double unrooted_U(const DegreeSet& ds, double z);
double unicycle_V(const DegreeSet& ds, const CriticalPoint& cp, double z);
double unicycle_V(const DegreeSet& ds, double z);

// Solution of phi0(z) = 2r.
double root1(const DegreeSet& ds, double r);

struct SaddleRoots {
  double root1 = 0;
  double zhat = 0;
  bool double_root = false;  // root1 coincides with zhat (r = alpha)
};
SaddleRoots saddle_roots(const DegreeSet& ds, double r);

// h(z;r) = r log w'(z) - r log z + (1-r) log(2w - z w'), principal branch.
std::complex<double> h_eval(const DegreeSet& ds, std::complex<double> z, double r);
// Re h(z;r), evaluated from moduli so it is defined on the whole punctured plane.
double h_real(const DegreeSet& ds, std::complex<double> z, double r);
// d/dz h(z;r) on the positive axis in factored form.
double h_derivative(const DegreeSet& ds, double z, double r);

struct PetrovProfile {
  int grid_size = 0;
  int period = 1;
  double max_value = 0;
  std::vector<double> argmax;    // grid angles of near-maximal local maxima
  std::vector<double> expected;  // 2 pi k / p
  double margin = 0;             // max minus best value farther than one cell from every expected peak
  bool holds = false;
};

PetrovProfile petrov_profile(const DegreeSet& ds, double z0, double r, int grid_size);

}  // namespace critwin
