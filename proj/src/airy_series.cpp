#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "critwin/asymptotics.hpp"
#include "critwin/error.hpp"

namespace critwin {

namespace {

class Mp {
 public:
  explicit Mp(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }
  operator mpfr_ptr() { return v_; }

 private:
  mpfr_t v_;
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double log_abs_term(double y, double log_abs_a, int k) {
  double x = (y + 1.0 - 2.0 * k) / 3.0;
  if (is_nonpositive_integer(x)) return -std::numeric_limits<double>::infinity();
  return k * log_abs_a - std::lgamma(k + 1.0) - std::lgamma(x);
}

struct Scan {
  double peak = -std::numeric_limits<double>::infinity();
  double first = -std::numeric_limits<double>::infinity();
  int k_peak = 0;
  int cap = 500;
};

Scan scan_terms(double y, double a) {
  Scan s;
  double la = std::log(std::abs(a));
  // the magnitude peaks near k ~ 4|a|^3/9
  double guess = 4.0 * std::pow(std::abs(a), 3) / 9.0;
  s.cap = static_cast<int>(std::min(5.0e6, std::max(500.0, 8.0 * guess + 200.0)));
  for (int k = 0; k < s.cap; ++k) {
    double lt = log_abs_term(y, la, k);
    if (!std::isfinite(lt)) continue;
    if (!std::isfinite(s.first)) s.first = lt;
    if (lt > s.peak) {
      s.peak = lt;
      s.k_peak = k;
    }
    if (k > s.k_peak + 10 && lt < s.peak - 200.0) break;
  }
  s.cap = std::max(s.cap, 8 * s.k_peak + 200);
  return s;
}

struct Pass {
  SeriesValue value;
  double log_abs_sum = -std::numeric_limits<double>::infinity();
};

Pass sum_series(double y, double a, int k_peak, int cap, mpfr_prec_t bits) {
  Mp pk(bits), term(bits), sum(bits), x(bits), tmp(bits), ab(bits), tiny(bits);
  Mp rg0(bits), rg1(bits), rg2(bits);
  mpfr_ptr rg[3] = {rg0.get(), rg1.get(), rg2.get()};

  mpfr_set_d(ab, a, MPFR_RNDN);
  mpfr_set_ui(pk, 1, MPFR_RNDN);
  mpfr_set_zero(sum, 1);

  Pass out;
  int small_run = 0;
  int k = 0;
  for (; k < cap; ++k) {
    if (k > 0) {
      mpfr_mul(pk, pk, ab, MPFR_RNDN);
      mpfr_div_ui(pk, pk, static_cast<unsigned long>(k), MPFR_RNDN);
    }
    // x_k = (y + 1 - 2k) / 3
    mpfr_set_d(x, y, MPFR_RNDN);
    mpfr_add_si(x, x, 1 - 2 * k, MPFR_RNDN);
    mpfr_div_ui(x, x, 3, MPFR_RNDN);
    mpfr_ptr r = rg[k % 3];
    if (k < 3) {
      if (mpfr_integer_p(x) && mpfr_sgn(x.get()) <= 0) {
        mpfr_set_zero(r, 1);
      } else {
        mpfr_gamma(tmp, x, MPFR_RNDN);
        mpfr_ui_div(r, 1, tmp, MPFR_RNDN);
      }
    } else {
      // 1/Gamma(x) = x (x + 1) / Gamma(x + 2), and x + 2 = x_{k-3}
      mpfr_add_ui(tmp, x, 1, MPFR_RNDN);
      mpfr_mul(tmp, tmp, x, MPFR_RNDN);
      mpfr_mul(r, r, tmp, MPFR_RNDN);
    }
    mpfr_mul(term, pk, r, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);

    if (k > k_peak) {
      // |term| < 1e-17 |sum|
      mpfr_abs(tiny, sum, MPFR_RNDN);
      mpfr_mul_d(tiny, tiny, 1e-17, MPFR_RNDN);
      if (mpfr_cmpabs(term, tiny) < 0) {
        if (++small_run >= 5) {
          ++k;
          break;
        }
      } else {
        small_run = 0;
      }
    }
  }
  out.value.terms = k;
  out.value.bits = bits;
  out.value.converged = small_run >= 5;
  int sg = mpfr_sgn(sum.get());
  out.value.sum.sign = sg > 0 ? 1 : (sg < 0 ? -1 : 0);
  if (sg != 0) {
    mpfr_abs(tmp, sum, MPFR_RNDN);
    mpfr_log(tmp, tmp, MPFR_RNDN);
    out.log_abs_sum = mpfr_get_d(tmp, MPFR_RNDN);
    out.value.sum.log_abs = out.log_abs_sum;
  }
  return out;
}

}  // namespace

double LogReal::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SeriesValue airy_series(double y, double a) {
  if (!std::isfinite(y) || !std::isfinite(a)) throw Error(Errc::domain, "airy_series: non-finite argument");
  if (a == 0.0) {
    SeriesValue sv;
    sv.terms = 1;
    double x = (y + 1.0) / 3.0;
    if (is_nonpositive_integer(x)) return sv;
    double g = std::tgamma(x);
    sv.sum.sign = g > 0 ? 1 : -1;
    sv.sum.log_abs = -std::lgamma(x);
    return sv;
  }
  Scan s = scan_terms(y, a);
  double ln2 = std::log(2.0);
  // enough bits to hold the largest term relative to the first one, plus guard
  double spread = std::max(0.0, s.peak - std::min(s.first, 0.0));
  mpfr_prec_t bits = static_cast<mpfr_prec_t>(128 + spread / ln2);
  Pass p = sum_series(y, a, s.k_peak, s.cap, bits);
  // a sum sitting near the rounding floor means the cancellation ate the
  // precision; grow geometrically until the sum clears the floor
  for (int retry = 0; retry < 16; ++retry) {
    if (p.value.sum.sign == 0) {
      bits *= 2;
    } else {
      double lost = (s.peak - p.log_abs_sum) / ln2;
      if (lost + 80 <= static_cast<double>(bits)) break;
      bits = std::max(static_cast<mpfr_prec_t>(lost + 160), bits + bits / 2);
    }
    p = sum_series(y, a, s.k_peak, s.cap, bits);
  }
  return p.value;
}

}  // namespace critwin
