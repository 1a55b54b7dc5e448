#include "critwin/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "critwin/error.hpp"

namespace critwin {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int k) {
  cpp_int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

cpp_int ipow(int base, int e) {
  cpp_int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

double log_wright_e(int q) {
  return std::lgamma(6.0 * q + 1) - 5.0 * q * std::log(2.0) - 2.0 * q * std::log(3.0) - std::lgamma(3.0 * q + 1) -
         std::lgamma(2.0 * q + 1);
}

LogReal shift(LogReal v, double log_factor) {
  if (v.sign != 0) v.log_abs += log_factor;
  return v;
}

// log of the kernel-weighted terms e_q t3^{2q} A_Delta(3q + 1/2, mu), q = 0..q_max
std::vector<double> log_weights(const CriticalPoint& cp, double mu, Variant variant, int q_from, int q_to,
                                std::vector<std::string>& warnings) {
  std::vector<double> lw;
  for (int q = q_from; q <= q_to; ++q) {
    LogReal a = log_bigA_delta(cp, 3.0 * q + 0.5, mu, variant);
    if (a.sign <= 0) {
      std::ostringstream os;
      os << "A_Delta(" << 3 * q << ".5, " << mu << ") is not positive; weight dropped";
      warnings.push_back(os.str());
      lw.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    lw.push_back(log_wright_e(q) + 2.0 * q * std::log(cp.t3) + a.log_abs);
  }
  return lw;
}

std::vector<double> normalize(const std::vector<double>& lw) {
  double mx = *std::max_element(lw.begin(), lw.end());
  std::vector<double> p(lw.size());
  double s = 0;
  for (size_t i = 0; i < lw.size(); ++i) s += (p[i] = std::exp(lw[i] - mx));
  for (double& v : p) v /= s;
  return p;
}

}  // namespace

ExactConstant wright_e(int q) {
  if (q < 0 || q > 30) throw Error(Errc::out_of_range, "wright_e is tabulated for 0 <= q <= 30");
  Rational r(factorial(6 * q), ipow(2, 5 * q) * ipow(3, 2 * q) * factorial(3 * q) * factorial(2 * q));
  return {r, static_cast<double>(r)};
}

ExactConstant planar_c(int q) {
  static const std::pair<long, long> table[] = {
      {1, 1}, {5, 24}, {385, 1152}, {83933, 82944}, {35002561, 7962624}};
  if (q < 0 || q > 4) throw Error(Errc::out_of_range, "planar_c is known only for 0 <= q <= 4");
  Rational r(table[q].first, table[q].second);
  return {r, static_cast<double>(r)};
}

const char* variant_name(Variant v) { return v == Variant::scaled_argument ? "scaled" : "plain"; }

Variant parse_variant(const std::string& s) {
  if (s == "scaled" || s == "scaled-argument") return Variant::scaled_argument;
  if (s == "plain" || s == "plain-exponential") return Variant::plain_exponential;
  throw Error(Errc::parse, "unknown variant '" + s + "' (expected scaled or plain)");
}

LogReal log_bigB(const CriticalPoint& cp, double y, double mu) {
  if (!(y >= 0.5)) throw Error(Errc::domain, "bigB needs y >= 1/2");
  double a = cp.c2 * std::pow(cp.c3, -2.0 / 3.0) * mu;
  SeriesValue s = airy_series(y, a);
  if (!s.converged) {
    std::ostringstream os;
    os << "bigB series did not converge (y=" << y << ", mu=" << mu << ", " << s.terms << " terms)";
    throw Error(Errc::non_convergence, os.str());
  }
  return shift(s.sum, std::log(1.0 / 3.0) + (y - 2.0) / 3.0 * std::log(cp.c3));
}

double bigB(const CriticalPoint& cp, double y, double mu) { return log_bigB(cp, y, mu).value(); }

LogReal log_bigA_classical(double y, double mu) {
  return shift(log_bigB(CriticalPoint::erdos_renyi(), y, mu), -mu * mu * mu / 6.0);
}

double bigA_classical(double y, double mu) { return log_bigA_classical(y, mu).value(); }

LogReal log_bigA_delta(const CriticalPoint& cp, double y, double mu, Variant variant) {
  double lzt = std::log(cp.t3 * cp.zhat);
  if (variant == Variant::scaled_argument) {
    double xi = 2.0 * cp.c2 * mu / std::cbrt(9.0 * cp.c3 * cp.c3);
    return shift(log_bigA_classical(y, xi), (1.0 - y) * lzt + (y - 2.0) / 3.0 * std::log(3.0 * cp.c3));
  }
  return shift(log_bigB(cp, y, mu), -mu * mu * mu / 6.0 + (1.0 - y) * lzt);
}

double bigA_delta(const CriticalPoint& cp, double y, double mu, Variant variant) {
  return log_bigA_delta(cp, y, mu, variant).value();
}

double bigA_asymptotic(double y, double mu, Direction dir) {
  if (!(std::abs(mu) >= 3.0)) throw Error(Errc::precondition, "bigA_asymptotic needs |mu| >= 3");
  const double pi = std::numbers::pi;
  if (dir == Direction::minus) {
    double m = std::abs(mu);
    return 1.0 / (std::sqrt(2.0 * pi) * std::pow(m, y - 0.5)) * (1.0 - (3.0 * y * y + 3.0 * y - 1.0) / (6.0 * m * m * m));
  }
  if (!(mu > 0)) throw Error(Errc::precondition, "bigA_asymptotic plus direction needs mu > 0");
  double lead = std::exp(-mu * mu * mu / 6.0) / (std::pow(2.0, y / 2.0) * std::pow(mu, 1.0 - y / 2.0));
  double bracket = 1.0 / std::tgamma(y / 2.0) + 4.0 * std::pow(mu, -1.5) / (3.0 * std::sqrt(2.0) * std::tgamma(y / 2.0 - 1.5));
  return lead * bracket;
}

TheoryPrediction excess_distribution(const CriticalPoint& cp, double mu, Variant variant, int q_max) {
  if (q_max < 5) throw Error(Errc::precondition, "excess_distribution needs q_max >= 5");
  TheoryPrediction tp;
  tp.mu = mu;
  tp.variant = variant;
  tp.q_max = q_max;
  std::vector<double> lw = log_weights(cp, mu, variant, 0, q_max, tp.warnings);
  tp.excess_dist = normalize(lw);
  tp.survival = tp.excess_dist[0];
  tp.tail_weight = tp.excess_dist.back();
  for (int q = 5; q <= q_max; ++q) tp.planar_truncation_mass += tp.excess_dist[q];
  if (tp.tail_weight > 1e-6) {
    std::ostringstream os;
    os << "truncation: P(q_max=" << q_max << ") = " << tp.tail_weight << " exceeds 1e-6";
    tp.warnings.push_back(os.str());
  }
  return tp;
}

TheoryPrediction predict(const CriticalPoint& cp, double mu, Variant variant, int q_max) {
  TheoryPrediction tp = excess_distribution(cp, mu, variant, q_max);
  double p = 0;
  for (int q = 0; q <= 4; ++q) p += planar_c(q).value / std::exp(log_wright_e(q)) * tp.excess_dist[q];
  tp.planarity = std::clamp(p, 0.0, 1.0);
  return tp;
}

double planarity_probability(const CriticalPoint& cp, double mu, Variant variant, int q_max) {
  return predict(cp, mu, variant, q_max).planarity;
}

int adaptive_qmax(const CriticalPoint& cp, double mu, Variant variant, double tol) {
  std::vector<std::string> ignored;
  std::vector<double> lw = log_weights(cp, mu, variant, 0, 20, ignored);
  for (int q_max = 20; q_max < 300; q_max += 10) {
    if (normalize(lw).back() < tol) return q_max;
    std::vector<double> more = log_weights(cp, mu, variant, q_max + 1, q_max + 10, ignored);
    lw.insert(lw.end(), more.begin(), more.end());
  }
  return 300;
}

TwoPathConstants twopath_constants(const CriticalPoint& cp, double mu, int q) {
  if (q < 0) throw Error(Errc::domain, "twopath_constants needs q >= 0");
  LogReal b1 = log_bigB(cp, 3.0 * q + 0.5, mu);
  LogReal b3 = log_bigB(cp, 3.0 * q + 1.5, mu);
  LogReal b5 = log_bigB(cp, 3.0 * q + 2.5, mu);
  TwoPathConstants t;
  double scale = std::max({b1.log_abs, b3.log_abs, b5.log_abs});
  if (b1.sign == 0 || b1.log_abs < scale - 30.0) {
    t.near_zero = true;
    t.b1 = t.b2 = t.b2_squared = t.b2_squared_printed = t.second_factorial_ratio =
        std::numeric_limits<double>::quiet_NaN();
    return t;
  }
  auto ratio = [&](LogReal a) { return a.sign * std::exp(a.log_abs - b1.log_abs) * b1.sign; };
  t.b1 = ratio(b3);
  t.second_factorial_ratio = ratio(b5);
  t.b2_squared_printed = t.second_factorial_ratio - t.b1 * t.b1;
  t.b2_squared = 2.0 * t.second_factorial_ratio - t.b1 * t.b1;
  t.b2 = t.b2_squared >= 0 ? std::sqrt(t.b2_squared) : std::numeric_limits<double>::quiet_NaN();
  return t;
}

RejectionRate rejection_rate(double phi1_at_z0) {
  if (!(phi1_at_z0 >= 0.0)) throw Error(Errc::domain, "rejection_rate needs phi1 >= 0");
  RejectionRate r;
  r.acceptance = std::exp(-phi1_at_z0 / 2.0 - phi1_at_z0 * phi1_at_z0 / 4.0);
  r.expected_attempts = 1.0 / r.acceptance;
  return r;
}

}  // namespace critwin
