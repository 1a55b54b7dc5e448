#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "critwin/critical.hpp"

namespace critwin {

using Rational = boost::multiprecision::cpp_rational;

struct ExactConstant {
  Rational exact;
  double value = 0;
};

// Wright constants e_q0 = (6q)! / (2^{5q} 3^{2q} (3q)! (2q)!), q <= 30.
ExactConstant wright_e(int q);
// Coefficients c_q of the planar cubic kernel series, q <= 4.
ExactConstant planar_c(int q);

// A real number stored as sign * exp(log_abs); sign == 0 means exactly zero.
struct LogReal {
  double log_abs = 0;
  int sign = 0;
  double value() const;
};

struct SeriesValue {
  LogReal sum;
  int terms = 0;
  long bits = 0;
  bool converged = true;
};

// S(y, a) = sum_k a^k / (k! Gamma((y + 1 - 2k) / 3)), summed in multiprecision
// with the precision adapted to the cancellation between terms.
SeriesValue airy_series(double y, double a);

enum class Variant { scaled_argument, plain_exponential };
const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

LogReal log_bigB(const CriticalPoint& cp, double y, double mu);
double bigB(const CriticalPoint& cp, double y, double mu);
LogReal log_bigA_classical(double y, double mu);
double bigA_classical(double y, double mu);
LogReal log_bigA_delta(const CriticalPoint& cp, double y, double mu, Variant variant);
double bigA_delta(const CriticalPoint& cp, double y, double mu, Variant variant);

enum class Direction { minus, plus };
double bigA_asymptotic(double y, double mu, Direction dir);

struct TheoryPrediction {
  double mu = 0;
  Variant variant = Variant::scaled_argument;
  double survival = 0;
  std::vector<double> excess_dist;  // q = 0..q_max
  double planarity = 0;
  int q_max = 0;
  double tail_weight = 0;             // P(q_max)
  double planar_truncation_mass = 0;  // sum of P(q) for q > 4
  std::vector<std::string> warnings;
};

TheoryPrediction excess_distribution(const CriticalPoint& cp, double mu, Variant variant, int q_max = 20);
// Fills survival, excess_dist and planarity.
TheoryPrediction predict(const CriticalPoint& cp, double mu, Variant variant, int q_max = 20);
double planarity_probability(const CriticalPoint& cp, double mu, Variant variant, int q_max = 20);
// Smallest q_max (step 10, from 20 up to 300) whose tail weight is below tol.
int adaptive_qmax(const CriticalPoint& cp, double mu, Variant variant, double tol = 1e-9);

struct TwoPathConstants {
  double b1 = 0;                      // B(3q+3/2) / B(3q+1/2)
  double second_factorial_ratio = 0;  // B(3q+5/2) / B(3q+1/2)
  // (B(3q+5/2) B(3q+1/2) - B(3q+3/2)^2) / B(3q+1/2)^2 as printed
  double b2_squared_printed = 0;
  // Variance scale implied by E P(P-1) ~ 2 t3^2 n^{2/3} B(3q+5/2)/B(3q+1/2):
  // 2 B(3q+5/2)/B(3q+1/2) - B1^2
  double b2_squared = 0;
  double b2 = 0;
  bool near_zero = false;
};

TwoPathConstants twopath_constants(const CriticalPoint& cp, double mu, int q);

struct RejectionRate {
  double acceptance = 0;
  double expected_attempts = 0;
};

RejectionRate rejection_rate(double phi1_at_z0);

}  // namespace critwin
