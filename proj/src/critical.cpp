#include "critwin/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "critwin/error.hpp"

namespace critwin {

namespace {

using Degrees = std::span<const int>;

double phi1_raw(Degrees deg, double z) { return z * egf_raw(deg, z, 2) / egf_raw(deg, z, 1); }
double phi0_raw(Degrees deg, double z) { return z * egf_raw(deg, z, 1) / egf_raw(deg, z, 0); }

// Bracket by doubling, bisect, then polish with Newton (kept only if it stays
// inside the final bracket). f must be increasing with f(0+) < 0.
template <class F, class DF>
double monotone_root(F f, DF df, double hi_limit, Errc fail, const std::string& what) {
  double lo = 0.0, hi = 1.0;
  int doublings = 0;
  while (!(f(hi) > 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 400 || hi > hi_limit) throw Error(fail, what);
  }
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double d = df(z);
    if (!(d > 0.0)) break;
    double next = z - f(z) / d;
    if (!(next >= lo && next <= hi)) break;
    z = next;
  }
  return z;
}

double solve_zhat(Degrees deg) {
  auto f = [&](double z) { return phi1_raw(deg, z) - 1.0; };
  auto df = [&](double z) {
    double w1 = egf_raw(deg, z, 1), w2 = egf_raw(deg, z, 2), w3 = egf_raw(deg, z, 3);
    double q = w2 / w1;
    return q + z * w3 / w1 - z * q * q;
  };
  return monotone_root(f, df, 1e6, Errc::no_critical_point, "phi1 never reaches 1: no critical point");
}

bool stable_at(const DegreeSet& ds, double z) {
  for (int order = 0; order <= 3; ++order) {
    double a = egf_raw(Degrees(ds.degrees()), z, order);
    double b = egf_raw(Degrees(ds.extended_degrees()), z, order);
    if (std::abs(a - b) > 1e-12 * std::abs(b)) return false;
  }
  return true;
}

}  // namespace

CriticalPoint CriticalPoint::erdos_renyi() {
  CriticalPoint cp;
  cp.zhat = 1.0;
  cp.alpha = 0.5;
  cp.t3 = 1.0;
  cp.c2 = 0.5;
  cp.c3 = 1.0 / 3.0;
  cp.rho = std::exp(-1.0);
  cp.effective_bound = -1;
  return cp;
}

CriticalPoint critical_point(const DegreeSet& ds_in) {
  if (ds_in.max_degree() < 3)
    throw Error(Errc::no_critical_point, "degree set " + ds_in.describe() + " has max degree below 3");
  DegreeSet ds = ds_in;
  double zhat = solve_zhat(Degrees(ds.degrees()));
  if (ds.is_rule()) {
    int extensions = 0;
    while (!stable_at(ds, zhat)) {
      if (++extensions > 6)
        throw Error(Errc::truncation_instability,
                    "critical point of " + ds_in.describe() + " unstable under bound doubling");
      ds = ds.with_bound(2 * ds.truncation_bound());
      zhat = solve_zhat(Degrees(ds.degrees()));
    }
  }
  Degrees deg(ds.degrees());
  double w0 = egf_raw(deg, zhat, 0), w1 = egf_raw(deg, zhat, 1), w3 = egf_raw(deg, zhat, 3);
  CriticalPoint cp;
  cp.zhat = zhat;
  cp.alpha = zhat * w1 / w0 / 2.0;
  cp.t3 = zhat * w3 / w1;
  cp.c2 = cp.t3 * cp.alpha * zhat / (2.0 * (1.0 - cp.alpha));
  cp.c3 = 2.0 * cp.t3 * cp.alpha * zhat / 3.0;
  cp.rho = zhat / w1;
  cp.effective_bound = ds.truncation_bound();
  return cp;
}

namespace {

double solve_T1(const DegreeSet& ds, const CriticalPoint& cp, double z) {
  if (!(z >= 0.0)) throw Error(Errc::domain, "tree_T needs z >= 0");
  if (z == 0.0) return 0.0;
  Degrees deg(ds.degrees());
  if (z > cp.rho * (1.0 + 1e-12)) {
    double T = 0.0, residual = 0.0;
    for (int i = 0; i < 200 && std::isfinite(T); ++i) {
      double next = z * egf_raw(deg, T, 1);
      residual = std::abs(next - T);
      T = next;
    }
    std::ostringstream os;
    os.precision(12);
    os << "tree function has no real fixed point for z=" << z << " > rho=" << cp.rho
       << " (fixed-point residual after 200 steps: " << residual << ")";
    throw Error(Errc::non_convergence, os.str());
  }
  if (z >= cp.rho * (1.0 - 1e-15)) return cp.zhat;

  double T = 0.0;
  for (int it = 0; it < 1000; ++it) {
    double w1 = egf_raw(deg, T, 1);
    double F = T - z * w1;
    double dF = 1.0 - z * egf_raw(deg, T, 2);
    double next = dF > 1e-8 ? T - F / dF : T + 0.5 * (z * w1 - T);
    next = std::min(next, cp.zhat);
    bool done = std::abs(next - T) <= 4e-16 * std::max(1.0, next);
    T = next;
    if (done) break;
  }
  double residual = std::abs(T - z * egf_raw(deg, T, 1));
  if (residual > 1e-13) {
    std::ostringstream os;
    os << "tree function iteration stalled at z=" << z << " with residual " << residual;
    throw Error(Errc::non_convergence, os.str());
  }
  return T;
}

}  // namespace

double tree_T(const DegreeSet& ds, const CriticalPoint& cp, int ell, double z) {
  if (ell < 0 || ell > 4) throw Error(Errc::domain, "tree_T order must be in 0..4");
  double T1 = solve_T1(ds, cp, z);
  if (ell == 1) return T1;
  return z * egf_raw(ds, T1, ell);
}

double tree_T(const DegreeSet& ds, int ell, double z) { return tree_T(ds, critical_point(ds), ell, z); }

std::complex<double> tree_T(const DegreeSet& ds, const CriticalPoint& cp, int ell, std::complex<double> z) {
  if (ell < 0 || ell > 4) throw Error(Errc::domain, "tree_T order must be in 0..4");
  if (!(std::abs(z) < cp.rho)) throw Error(Errc::domain, "complex tree_T needs |z| < rho");
  Degrees deg(ds.degrees());
  std::complex<double> T = 0.0;
  // |z w''(T)| <= T_2(|z|) < 1 inside the disc, so the fixed-point map contracts.
  for (int it = 0; it < 100000; ++it) {
    std::complex<double> next = z * egf_raw(deg, T, 1);
    bool done = std::abs(next - T) <= 1e-16 * std::max(1.0, std::abs(next));
    T = next;
    if (done) break;
  }
  if (ell == 1) return T;
  return z * egf_raw(deg, T, ell);
}

double unrooted_U(const DegreeSet& ds, const CriticalPoint& cp, double z) {
  double T1 = solve_T1(ds, cp, z);
  double T0 = z * egf_raw(ds, T1, 0);
  return T0 - T1 * T1 / 2.0;
}

double unrooted_U(const DegreeSet& ds, double z) { return unrooted_U(ds, critical_point(ds), z); }

double unicycle_V(const DegreeSet& ds, const CriticalPoint& cp, double z) {
  if (z >= cp.rho * (1.0 - 1e-15))
    throw Error(Errc::singularity, "unicycle_V diverges at z >= rho");
  double T2 = tree_T(ds, cp, 2, z);
  if (T2 >= 1.0) throw Error(Errc::singularity, "unicycle_V: T2 reached 1");
  return 0.5 * (-std::log1p(-T2) - T2 - T2 * T2 / 2.0);
}

double unicycle_V(const DegreeSet& ds, double z) { return unicycle_V(ds, critical_point(ds), z); }

double root1(const DegreeSet& ds, double r) {
  Degrees deg(ds.degrees());
  double target = 2.0 * r;
  double lower = ds.min_degree();
  if (!(target > lower)) {
    std::ostringstream os;
    os << "root1: 2r=" << target << " is not above the infimum " << lower << " of phi0";
    throw Error(Errc::out_of_range, os.str());
  }
  if (!ds.is_rule() && !(target < ds.max_degree())) {
    std::ostringstream os;
    os << "root1: 2r=" << target << " is not below the supremum " << ds.max_degree() << " of phi0";
    throw Error(Errc::out_of_range, os.str());
  }
  auto f = [&](double z) { return phi0_raw(deg, z) - target; };
  auto df = [&](double z) {
    double w0 = egf_raw(deg, z, 0), w1 = egf_raw(deg, z, 1), w2 = egf_raw(deg, z, 2);
    double q = w1 / w0;
    return q + z * w2 / w0 - z * q * q;
  };
  return monotone_root(f, df, 1e100, Errc::out_of_range, "root1: phi0 does not reach 2r in range");
}

SaddleRoots saddle_roots(const DegreeSet& ds, double r) {
  SaddleRoots s;
  s.root1 = root1(ds, r);
  s.zhat = critical_point(ds).zhat;
  s.double_root = std::abs(s.root1 - s.zhat) <= 1e-9 * s.zhat;
  return s;
}

namespace {

bool on_negative_axis(std::complex<double> x) { return x.imag() == 0.0 && x.real() < 0.0; }

}  // namespace

std::complex<double> h_eval(const DegreeSet& ds, std::complex<double> z, double r) {
  Degrees deg(ds.degrees());
  std::complex<double> w0 = egf_raw(deg, z, 0), w1 = egf_raw(deg, z, 1);
  std::complex<double> g = 2.0 * w0 - z * w1;
  if (z == 0.0 || w1 == 0.0 || g == 0.0) throw Error(Errc::domain, "h_eval: logarithm of zero");
  if (on_negative_axis(z) || on_negative_axis(w1) || on_negative_axis(g))
    throw Error(Errc::branch_cut, "h_eval: argument on the negative real axis (branch cut of log)");
  return r * std::log(w1) - r * std::log(z) + (1.0 - r) * std::log(g);
}

double h_real(const DegreeSet& ds, std::complex<double> z, double r) {
  Degrees deg(ds.degrees());
  std::complex<double> w0 = egf_raw(deg, z, 0), w1 = egf_raw(deg, z, 1);
  std::complex<double> g = 2.0 * w0 - z * w1;
  return r * std::log(std::abs(w1)) - r * std::log(std::abs(z)) + (1.0 - r) * std::log(std::abs(g));
}

double h_derivative(const DegreeSet& ds, double z, double r) {
  Degrees deg(ds.degrees());
  double p0 = phi0_raw(deg, z), p1 = phi1_raw(deg, z);
  return (p0 - 2.0 * r) * (p1 - 1.0) / (z * (p0 - 2.0));
}

PetrovProfile petrov_profile(const DegreeSet& ds, double z0, double r, int grid_size) {
  if (grid_size < 8) throw Error(Errc::precondition, "petrov_profile needs grid_size >= 8");
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::precondition, "petrov_profile needs 0 < r < 1");
  if (!(z0 > 0.0)) throw Error(Errc::precondition, "petrov_profile needs z0 > 0");
  CriticalPoint cp = critical_point(ds);
  double bound = cp.zhat;
  if (!(2.0 * r > ds.min_degree()))
    throw Error(Errc::precondition, "petrov_profile: phi0 > 2r everywhere, no admissible z0");
  if (ds.is_rule() || 2.0 * r < ds.max_degree()) bound = std::min(bound, root1(ds, r));
  if (z0 > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(12);
    os << "petrov_profile: z0=" << z0 << " exceeds min(root1(r), zhat)=" << bound;
    throw Error(Errc::precondition, os.str());
  }

  PetrovProfile prof;
  prof.grid_size = grid_size;
  prof.period = periodicity(ds);
  const double two_pi = 2.0 * std::numbers::pi;
  const double cell = two_pi / grid_size;
  std::vector<double> vals(grid_size);
  for (int k = 0; k < grid_size; ++k) vals[k] = h_real(ds, std::polar(z0, k * cell), r);
  prof.max_value = *std::max_element(vals.begin(), vals.end());
  for (int k = 0; k < prof.period; ++k) prof.expected.push_back(two_pi * k / prof.period);

  auto circ_dist = [&](double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
  };
  auto near_expected = [&](double theta) {
    for (double e : prof.expected)
      if (circ_dist(theta, e) <= cell * (1.0 + 1e-9)) return true;
    return false;
  };

  // a peak between grid points shows up lower by at most one cell's variation
  double step = 0;
  for (int k = 0; k < grid_size; ++k) step = std::max(step, std::abs(vals[(k + 1) % grid_size] - vals[k]));
  const double tol = std::max(step, 1e-12 * std::max(1.0, std::abs(prof.max_value)));
  double off_best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_size; ++k) {
    double v = vals[k];
    double prev = vals[(k + grid_size - 1) % grid_size], next = vals[(k + 1) % grid_size];
    double theta = k * cell;
    if (v >= prev && v >= next && v >= prof.max_value - tol) prof.argmax.push_back(theta);
    if (!near_expected(theta)) off_best = std::max(off_best, v);
  }
  prof.margin = prof.max_value - off_best;

  bool all_near = std::all_of(prof.argmax.begin(), prof.argmax.end(), near_expected);
  bool all_hit = std::all_of(prof.expected.begin(), prof.expected.end(), [&](double e) {
    return std::any_of(prof.argmax.begin(), prof.argmax.end(),
                       [&](double a) { return circ_dist(a, e) <= cell * (1.0 + 1e-9); });
  });
  prof.holds = !prof.argmax.empty() && all_near && all_hit;
  return prof;
}

}  // namespace critwin
