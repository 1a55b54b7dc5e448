#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace critwin {

// Degree constraint set. Either an explicit finite list or a rule (a predicate
// on degrees) materialized up to a truncation bound.
class DegreeSet {
 public:
  static DegreeSet from_list(std::vector<int> degrees);
  static DegreeSet from_rule(std::string name, std::function<bool(int)> pred, int bound);

  const std::vector<int>& degrees() const { return degrees_; }
  // Same rule materialized to twice the bound; equals degrees() for finite lists.
  const std::vector<int>& extended_degrees() const { return extended_; }
  int truncation_bound() const { return bound_; }
  bool is_rule() const { return static_cast<bool>(pred_); }
  const std::string& rule_name() const { return rule_; }
  int min_degree() const { return degrees_.front(); }
  int max_degree() const { return degrees_.back(); }
  bool contains(int d) const;
  // Rule sets only: rematerialize with a new bound. Finite lists are returned unchanged.
  DegreeSet with_bound(int bound) const;
  // Degrees not exceeding cap (used once 2m is known).
  std::vector<int> degrees_up_to(long cap) const;
  std::string describe() const;

 private:
  DegreeSet() = default;
  void validate() const;

  std::vector<int> degrees_;
  std::vector<int> extended_;
  std::string rule_;
  std::function<bool(int)> pred_;
  int bound_ = 0;
};

// Grammar: "1,3,5,7" | "0..9" | "<rule>[:<bound>]" with rule in
// all, pow2 (powers-of-two), odd, even.
DegreeSet parse_degree_set(std::string_view spec);

namespace detail {

// 1/k! for k <= 170, computed in extended precision and rounded once.
const std::array<double, 171>& inverse_factorials();

template <class T>
struct Neumaier {
  T sum{};
  T comp{};
  void add(T x) {
    T t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  T value() const { return sum + comp; }
};

template <class T>
struct Neumaier<std::complex<T>> {
  Neumaier<T> re, im;
  void add(std::complex<T> x) {
    re.add(x.real());
    im.add(x.imag());
  }
  std::complex<T> value() const { return {re.value(), im.value()}; }
};

template <class Scalar>
Scalar power_over_factorial(Scalar z, int k) {
  if (k == 0) return Scalar(1);
  if (z == Scalar(0)) return Scalar(0);
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (k <= 170) return std::pow(z, k) * inverse_factorials()[k];
    double mag = k * std::log(std::abs(z)) - std::lgamma(k + 1.0);
    double v = std::exp(mag);
    return (z < 0 && k % 2 == 1) ? -v : v;
  } else {
    return std::exp(static_cast<double>(k) * std::log(z) - std::lgamma(k + 1.0));
  }
}

}  // namespace detail

// order-th derivative of sum_{d in degrees} z^d/d!, compensated summation, no
// truncation checks. Works for real and complex scalars.
template <class Scalar>
Scalar egf_raw(std::span<const int> degrees, Scalar z, int order) {
  detail::Neumaier<Scalar> acc;
  for (int d : degrees) {
    if (d < order) continue;
    acc.add(detail::power_over_factorial(z, d - order));
  }
  return acc.value();
}

template <class Scalar>
Scalar egf_raw(const DegreeSet& ds, Scalar z, int order) {
  return egf_raw<Scalar>(std::span<const int>(ds.degrees()), z, order);
}

// Checked evaluation: z >= 0, order in 0..3, and for rule sets the value must
// be stable under doubling of the truncation bound.
double egf_eval(const DegreeSet& ds, double z, int order);
double phi0(const DegreeSet& ds, double z);
double phi1(const DegreeSet& ds, double z);

int periodicity(const DegreeSet& ds);

struct ConditionDiagnosis {
  bool pass = false;
  bool lower_ok = false;
  bool upper_ok = false;
  bool divisibility_ok = false;
  int period = 1;
  std::string message;
};

ConditionDiagnosis check_condition_C(const DegreeSet& ds, long n, long m);

}  // namespace critwin
