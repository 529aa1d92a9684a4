// Thin RAII wrapper over MPFR for the few high-precision real operations the
// crossover-exponent solver needs (logs, powers, comparisons, rendering).
//
// Nothing decision-critical lives here: every integer conclusion in the
// library is reached by exact rational comparison, and these reals are used
// for reporting and for redundant numeric cross-checks only.

#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "opn/arith.hpp"

namespace opn {

class Real {
 public:
  // ~125 decimal digits; plenty of headroom over the 50 digits reported.
  static constexpr mpfr_prec_t default_precision = 416;

  explicit Real(mpfr_prec_t prec = default_precision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(Real o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(const Int& z, mpfr_prec_t prec = default_precision) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real of(const Ratio& q, mpfr_prec_t prec = default_precision) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real of(long x, mpfr_prec_t prec = default_precision) { return of(Int(x), prec); }

  friend Real log(const Real& x) {
    Real r(mpfr_get_prec(x.v_));
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& base, const Real& exponent) {
    Real r(mpfr_get_prec(base.v_));
    mpfr_pow(r.v_, base.v_, exponent.v_, MPFR_RNDN);
    return r;
  }
  friend Real abs(const Real& x) {
    Real r(mpfr_get_prec(x.v_));
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
  friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
  friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
  friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // `sig` significant decimal digits, round to nearest; fixed-point notation
  // for moderate exponents, scientific otherwise.
  std::string str(int sig) const {
    if (mpfr_zero_p(v_)) return sig > 1 ? "0." + std::string(sig - 1, '0') : "0";
    mpfr_exp_t e10 = 0;
    char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(sig), v_, MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
      sign = "-";
      digits.erase(0, 1);
    }
    // value = 0.digits * 10^e10
    std::string out;
    long e = static_cast<long>(e10);
    if (e > 0 && e <= sig) {
      out = digits.substr(0, static_cast<size_t>(e));
      if (e < sig) out += "." + digits.substr(static_cast<size_t>(e));
    } else if (e <= 0 && e > -4) {
      out = "0." + std::string(static_cast<size_t>(-e), '0') + digits;
    } else {
      out = digits.substr(0, 1);
      if (sig > 1) out += "." + digits.substr(1);
      long se = e - 1;
      out += "e" + std::string(se >= 0 ? "+" : "-") + std::to_string(se >= 0 ? se : -se);
    }
    return sign + out;
  }

 private:
  template <typename F>
  static Real binop(F f, const Real& a, const Real& b) {
    Real r(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

// |a - b| / |b|, for numeric cross-checks.
inline Real relative_difference(const Real& a, const Real& b) { return abs((a - b) / b); }

}  // namespace opn
