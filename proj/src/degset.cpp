#include "critwin/degset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "critwin/error.hpp"

namespace critwin {

namespace {

constexpr double kStableRel = 1e-12;

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_int(std::string_view tok, std::string_view whole) {
  std::string t = trim(tok);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw Error(Errc::parse, "cannot parse degree '" + t + "' in degree set '" + std::string(whole) + "'");
  return v;
}

bool is_power_of_two(int d) { return d > 0 && (d & (d - 1)) == 0; }

std::vector<int> materialize(const std::function<bool(int)>& pred, int bound) {
  std::vector<int> out;
  for (int d = 0; d <= bound; ++d)
    if (pred(d)) out.push_back(d);
  return out;
}

}  // namespace

namespace detail {

const std::array<double, 171>& inverse_factorials() {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    long double f = 1.0L;
    t[0] = 1.0;
    for (int k = 1; k <= 170; ++k) {
      f *= k;
      t[k] = static_cast<double>(1.0L / f);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

void DegreeSet::validate() const {
  if (degrees_.empty()) throw Error(Errc::invalid_degree_set, "degree set is empty");
  if (degrees_.front() < 0) throw Error(Errc::invalid_degree_set, "degrees must be non-negative");
  if (!contains(1))
    throw Error(Errc::invalid_degree_set,
                "degree set " + describe() + " does not contain 1; we require that 1 is in the degree set");
  if (degrees_.back() <= 2)
    throw Error(Errc::invalid_degree_set,
                "degree set " + describe() +
                    " has no degree >= 3; phi1 stays below 1 and no critical point exists");
}

DegreeSet DegreeSet::from_list(std::vector<int> degrees) {
  DegreeSet ds;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  ds.degrees_ = degrees;
  ds.extended_ = degrees;
  ds.bound_ = degrees.empty() ? 0 : degrees.back();
  ds.validate();
  return ds;
}

DegreeSet DegreeSet::from_rule(std::string name, std::function<bool(int)> pred, int bound) {
  if (!pred) throw Error(Errc::invalid_degree_set, "rule '" + name + "' has no predicate");
  if (bound < 1) throw Error(Errc::invalid_degree_set, "truncation bound must be positive");
  DegreeSet ds;
  ds.rule_ = std::move(name);
  ds.pred_ = std::move(pred);
  ds.bound_ = bound;
  ds.degrees_ = materialize(ds.pred_, bound);
  ds.extended_ = materialize(ds.pred_, 2 * bound);
  ds.validate();
  return ds;
}

bool DegreeSet::contains(int d) const { return std::binary_search(degrees_.begin(), degrees_.end(), d); }

DegreeSet DegreeSet::with_bound(int bound) const {
  if (!is_rule()) return *this;
  return from_rule(rule_, pred_, bound);
}

std::vector<int> DegreeSet::degrees_up_to(long cap) const {
  std::vector<int> out;
  for (int d : degrees_)
    if (d <= cap) out.push_back(d);
  return out;
}

std::string DegreeSet::describe() const {
  std::ostringstream os;
  if (is_rule()) {
    os << rule_ << ":" << bound_;
    return os.str();
  }
  os << "{";
  for (size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
  os << "}";
  return os.str();
}

DegreeSet parse_degree_set(std::string_view spec_in) {
  std::string spec = trim(spec_in);
  if (spec.empty()) throw Error(Errc::invalid_degree_set, "degree set is empty");

  if (std::isalpha(static_cast<unsigned char>(spec[0]))) {
    std::string name = spec;
    int bound = -1;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
      name = trim(std::string_view(spec).substr(0, colon));
      bound = parse_int(std::string_view(spec).substr(colon + 1), spec);
    }
    if (name == "all") return DegreeSet::from_rule("all", [](int) { return true; }, bound < 0 ? 60 : bound);
    if (name == "pow2" || name == "powers-of-two")
      return DegreeSet::from_rule("pow2", is_power_of_two, bound < 0 ? 64 : bound);
    if (name == "odd") return DegreeSet::from_rule("odd", [](int d) { return d % 2 == 1; }, bound < 0 ? 61 : bound);
    if (name == "even") return DegreeSet::from_rule("even", [](int d) { return d % 2 == 0; }, bound < 0 ? 60 : bound);
    throw Error(Errc::parse, "unknown degree rule '" + name + "' (expected all, pow2, odd, even)");
  }

  if (auto dots = spec.find(".."); dots != std::string::npos) {
    int lo = parse_int(std::string_view(spec).substr(0, dots), spec);
    int hi = parse_int(std::string_view(spec).substr(dots + 2), spec);
    if (hi < lo) throw Error(Errc::parse, "empty range '" + spec + "'");
    std::vector<int> v(hi - lo + 1);
    std::iota(v.begin(), v.end(), lo);
    return DegreeSet::from_list(std::move(v));
  }

  std::vector<int> v;
  std::string_view rest = spec;
  while (true) {
    auto comma = rest.find(',');
    v.push_back(parse_int(rest.substr(0, comma), spec));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return DegreeSet::from_list(std::move(v));
}

double egf_eval(const DegreeSet& ds, double z, int order) {
  if (!(z >= 0.0)) throw Error(Errc::domain, "egf_eval needs z >= 0, got " + std::to_string(z));
  if (order < 0 || order > 3) throw Error(Errc::domain, "egf_eval order must be in 0..3");
  double v = egf_raw(ds, z, order);
  if (ds.is_rule()) {
    double v2 = egf_raw(std::span<const int>(ds.extended_degrees()), z, order);
    if (std::abs(v2 - v) > kStableRel * std::abs(v2)) {
      std::ostringstream os;
      os.precision(17);
      os << "truncation of " << ds.describe() << " is unstable at z=" << z << " (order " << order << "): " << v
         << " vs " << v2 << " with doubled bound";
      throw Error(Errc::truncation_instability, os.str());
    }
  }
  return v;
}

double phi0(const DegreeSet& ds, double z) {
  if (!(z > 0.0)) throw Error(Errc::domain, "phi0 needs z > 0");
  return z * egf_eval(ds, z, 1) / egf_eval(ds, z, 0);
}

double phi1(const DegreeSet& ds, double z) {
  if (!(z > 0.0)) throw Error(Errc::domain, "phi1 needs z > 0");
  return z * egf_eval(ds, z, 2) / egf_eval(ds, z, 1);
}

int periodicity(const DegreeSet& ds) {
  const auto& d = ds.degrees();
  int g = 0;
  for (size_t i = 1; i < d.size(); ++i) g = std::gcd(g, d[i] - d[0]);
  return g == 0 ? 1 : g;
}

ConditionDiagnosis check_condition_C(const DegreeSet& ds, long n, long m) {
  ConditionDiagnosis dx;
  dx.period = periodicity(ds);
  long lo = static_cast<long>(ds.min_degree()) * n;
  long hi = static_cast<long>(ds.max_degree()) * n;
  dx.lower_ok = lo < 2 * m;
  dx.upper_ok = 2 * m < hi;
  long diff = 2 * m - lo;
  dx.divisibility_ok = ((diff % dx.period) + dx.period) % dx.period == 0;
  dx.pass = dx.lower_ok && dx.upper_ok && dx.divisibility_ok;
  std::ostringstream os;
  if (dx.pass) {
    os << "ok";
  } else {
    const char* sep = "";
    if (!dx.lower_ok) { os << "2m=" << 2 * m << " <= n*min=" << lo; sep = "; "; }
    if (!dx.upper_ok) { os << sep << "2m=" << 2 * m << " >= n*max=" << hi; sep = "; "; }
    if (!dx.divisibility_ok) os << sep << "period " << dx.period << " does not divide 2m-n*min=" << diff;
  }
  dx.message = os.str();
  return dx;
}

}  // namespace critwin
