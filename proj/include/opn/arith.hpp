// Exact arithmetic kernel: factorization, the divisor-sum family
// (sigma, deficiency, aliquot sum, abundancy index), and a brute-force
// divisor-enumeration oracle used to cross-check the closed forms.
//
// All functions are pure; all values are exact (GMP integers/rationals).

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opn {

using Int = mpz_class;    // arbitrary-precision integer
using Ratio = mpq_class;  // exact rational, kept canonical (lowest terms, den > 0)

// Canonical rational from a num/den pair. Throws on den == 0.
inline Ratio ratio(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Ratio r(num, den);
  r.canonicalize();
  return r;
}

inline Ratio ratio(long num, long den) { return ratio(Int(num), Int(den)); }

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Ratio pow_ratio(const Ratio& base, unsigned long exp) {
  return ratio(pow_int(base.get_num(), exp), pow_int(base.get_den(), exp));
}

// "num/den" with the denominator always spelled out, e.g. "57/20", "12/1".
// Report files use this form; it is canonical and lossless.
inline std::string fraction_string(const Ratio& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string fraction_string(const Int& v) { return v.get_str() + "/1"; }

namespace arith {

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
  if (a % n == 0) return false;
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a proves n composite
}

}  // namespace detail

// Miller-Rabin. The witness set {2,...,37} is deterministic for
// n < 3.317e24 (Sorenson & Webster); inputs in this project stay far below
// that, larger n fall back to the extended base set {2,...,97}.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                      41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (long p : small_primes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // n - 1 = d * 2^s with d odd
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  static const Int deterministic_limit("3317044064679887385961981");
  for (long a : small_primes) {
    if (detail::miller_rabin_witness(n, Int(a), d, s)) return false;
    if (a == 37 && n < deterministic_limit) return true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

// Canonical factorization: primes strictly increasing, exponents >= 1,
// empty for x = 1.
struct Factorization {
  std::vector<PrimePower> factors;

  Int value() const {
    Int v = 1;
    for (const auto& f : factors) v *= pow_int(f.prime, f.exponent);
    return v;
  }

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.factors == b.factors;
  }
};

namespace detail {

constexpr long trial_division_limit = 1000000;

// Pollard rho (Floyd cycle finding). n must be odd, composite, and free of
// factors below the trial-division limit.
inline Int pollard_rho(const Int& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
  }
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) {
        d = n;  // cycle without a factor; retry with the next polynomial
        break;
      }
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(const Int& n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace detail

// Trial division up to 10^6, then Miller-Rabin on the cofactor with a
// Pollard-Brent split for anything still composite. factorize(1) = empty.
inline Factorization factorize(const Int& x) {
  if (x < 1) throw std::domain_error("factorize: input must be >= 1");
  Factorization result;
  Int rest = x;
  auto strip = [&](const Int& p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) result.factors.push_back({p, e});
  };
  strip(Int(2));
  for (Int d = 3; d <= detail::trial_division_limit && d * d <= rest; d += 2) strip(d);
  if (rest > 1) {
    if (is_prime(rest)) {
      result.factors.push_back({rest, 1});
    } else {
      std::vector<Int> primes;
      detail::factor_into(rest, primes);
      std::sort(primes.begin(), primes.end());
      for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        result.factors.push_back({primes[i], static_cast<unsigned>(j - i)});
        i = j;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Divisor-sum family
// ---------------------------------------------------------------------------

// sigma(p^a) = (p^(a+1) - 1)/(p - 1), multiplied over the prime powers.
inline Int sigma(const Factorization& f) {
  Int s = 1;
  for (const auto& pp : f.factors) s *= (pow_int(pp.prime, pp.exponent + 1) - 1) / (pp.prime - 1);
  return s;
}

inline Int sigma(const Int& x) {
  if (x < 1) throw std::domain_error("sigma: input must be >= 1");
  return sigma(factorize(x));
}

// Independent brute-force route: enumerate divisors up to sqrt(x).
inline Int sigma_oracle(const Int& x) {
  if (x < 1) throw std::domain_error("sigma_oracle: input must be >= 1");
  Int s = 0;
  for (Int d = 1; d * d <= x; ++d) {
    if (x % d == 0) {
      s += d;
      Int q = x / d;
      if (q != d) s += q;
    }
  }
  return s;
}

// D(x) = 2x - sigma(x). Negative exactly for abundant x.
inline Int deficiency(const Int& x) { return 2 * x - sigma(x); }

// s(x) = sigma(x) - x, the sum of proper divisors.
inline Int aliquot(const Int& x) { return sigma(x) - x; }

// I(x) = sigma(x)/x, in lowest terms. Equals 2 exactly for perfect x.
inline Ratio abundancy(const Int& x) { return ratio(sigma(x), x); }

inline bool is_perfect(const Int& x) { return sigma(x) == 2 * x; }

}  // namespace arith

// ---------------------------------------------------------------------------
// Decimal rendering (exact, round-half-even)
// ---------------------------------------------------------------------------

// Renders an exact rational to `sig` significant decimal digits using
// round-half-even, entirely in integer arithmetic. Fixed-point notation for
// moderate exponents, "...e+EE" otherwise.
inline std::string decimal_string(const Ratio& value, int sig) {
  if (sig < 1) throw std::invalid_argument("decimal_string: need >= 1 digits");
  if (value == 0) {
    std::string s = "0";
    if (sig > 1) s += "." + std::string(sig - 1, '0');
    return s;
  }
  const bool negative = value < 0;
  Int num = abs(value.get_num());
  Int den = value.get_den();

  // e = floor(log10(num/den)): count digits, then correct by one exact compare.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto pow10 = [](long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
  };
  // want 10^e <= num/den < 10^(e+1)
  while ((e >= 0 ? num < den * pow10(e) : num * pow10(-e) < den)) --e;
  while ((e + 1 >= 0 ? num >= den * pow10(e + 1) : num * pow10(-(e + 1)) >= den)) ++e;

  // scale to an integer with exactly `sig` digits: m = round(value * 10^(sig-1-e))
  long shift = sig - 1 - e;
  Int scaled_num = shift >= 0 ? num * pow10(shift) : num;
  Int scaled_den = shift >= 0 ? den : den * pow10(-shift);
  Int m, r;
  mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  Int twice_r = 2 * r;
  if (twice_r > scaled_den || (twice_r == scaled_den && mpz_odd_p(m.get_mpz_t()))) ++m;
  if (m == pow10(sig)) {  // rounding carried into a new digit
    m /= 10;
    ++e;
  }

  std::string digits = m.get_str();
  std::string out;
  if (-4 <= e && e < sig) {
    if (e >= 0) {
      out = digits.substr(0, e + 1);
      if (e + 1 < sig) out += "." + digits.substr(e + 1);
    } else {
      out = "0." + std::string(-e - 1, '0') + digits;
    }
  } else {
    out = digits.substr(0, 1);
    if (sig > 1) out += "." + digits.substr(1);
    out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(e >= 0 ? e : -e);
  }
  return negative ? "-" + out : out;
}

}  // namespace opn
