// Exact evaluation of the named bounds and closed forms at concrete
// (q, k, n, rho): the classical sandwich L(q) < I(q^k) + I(n^2) <= U(q), the
// weaker interval obtained from the deficiency product, the improved lower
// bounds l_1 and l_rho, the crossover-exponent solver, and the five-member
// divisor chain exercised on Descartes-style spoofs.
//
// Conventions. q is the candidate special prime, k its exponent, n the
// cofactor root (so the square is n^2), rho an exact rational lower bound on
// sigma(n^2)/q^k. All results are exact rationals; the solver's real numbers
// are reporting aids, never the basis of an integer conclusion.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "opn/arith.hpp"
#include "opn/highprec.hpp"

namespace opn::bounds {

// ---------------------------------------------------------------------------
// Euler-form validation
// ---------------------------------------------------------------------------

// (q, k, n) with the validity flags of the Euler form q^k n^2: q prime,
// q = k = 1 (mod 4), n odd, gcd(q, n) = 1. Invalid triples are reported,
// never rejected; the rational identities hold regardless.
struct EulerTriple {
  Int q;
  long k = 0;
  Int n;
  bool q_prime = false;
  bool q_1mod4 = false;
  bool k_1mod4 = false;
  bool n_odd = false;
  bool coprime_qn = false;

  bool all_valid() const { return q_prime && q_1mod4 && k_1mod4 && n_odd && coprime_qn; }
};

inline EulerTriple validate_euler(const Int& q, long k, const Int& n) {
  if (q < 2 || k < 1 || n < 1) throw std::domain_error("validate_euler: need q>=2, k>=1, n>=1");
  EulerTriple t;
  t.q = q;
  t.k = k;
  t.n = n;
  t.q_prime = arith::is_prime(q);
  t.q_1mod4 = q % 4 == 1;
  t.k_1mod4 = k % 4 == 1;
  t.n_odd = mpz_odd_p(n.get_mpz_t());
  t.coprime_qn = gcd(q, n) == 1;
  return t;
}

// ---------------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------------

namespace detail {

inline void require_q(const Int& q) {
  if (q < 2) throw std::domain_error("bound: q must be >= 2");
}

}  // namespace detail

// L(q) = 2(q-1)/q + q/(q-1). All three printed forms are computed and must
// agree exactly.
inline Ratio L_bound(const Int& q) {
  detail::require_q(q);
  Ratio sum = ratio(2 * (q - 1), q) + ratio(q, q - 1);
  Ratio single = ratio(3 * q * q - 4 * q + 2, q * (q - 1));
  Ratio three_minus = Ratio(3) - ratio(q - 2, q * (q - 1));
  if (sum != single || single != three_minus) throw std::logic_error("L_bound: forms disagree");
  return sum;
}

// U(q) = 2q/(q+1) + (q+1)/q, same three-way agreement.
inline Ratio U_bound(const Int& q) {
  detail::require_q(q);
  Ratio sum = ratio(2 * q, q + 1) + ratio(q + 1, q);
  Ratio single = ratio(3 * q * q + 2 * q + 1, q * (q + 1));
  Ratio three_minus = Ratio(3) - ratio(q - 1, q * (q + 1));
  if (sum != single || single != three_minus) throw std::logic_error("U_bound: forms disagree");
  return sum;
}

// sigma(q^k) for prime q, as (q^(k+1) - 1)/(q - 1).
inline Int sigma_prime_power(const Int& q, long k) {
  return (pow_int(q, static_cast<unsigned long>(k + 1)) - 1) / (q - 1);
}

// g(k) = I(q^k) + I(n^2) under the perfect-number relation I(n^2) = 2/I(q^k).
inline Ratio g_of_k(const Int& q, long k) {
  detail::require_q(q);
  if (k < 1) throw std::domain_error("g_of_k: k must be >= 1");
  Ratio i_qk = ratio(sigma_prime_power(q, k), pow_int(q, static_cast<unsigned long>(k)));
  return i_qk + Ratio(2) / i_qk;
}

// f(k) = 3 - g(k); equals (q^k-1)(q^(k+1)-2q^k+1) / (q^k (q-1)(q^(k+1)-1)).
inline Ratio f_of_k(const Int& q, long k) { return Ratio(3) - g_of_k(q, k); }

// The common value D(q^k) D(n^2) = 2 s(q^k) s(n^2) takes under the
// odd-perfect hypothesis: 2n^2 (q^k-1)(q^(k+1)-2q^k+1) / ((q-1)(q^(k+1)-1)).
inline Ratio common_value(const Int& q, long k, const Int& n) {
  detail::require_q(q);
  if (k < 1 || n < 1) throw std::domain_error("common_value: need k>=1, n>=1");
  Int qk = pow_int(q, static_cast<unsigned long>(k));
  Int qk1 = qk * q;
  return ratio(2 * n * n * (qk - 1) * (qk1 - 2 * qk + 1), (q - 1) * (qk1 - 1));
}

// Numerator of f'(k) with the log q factor stripped:
// (q-4) q^(2k+1) + 2 q^(k+1) + 2 q^(2k) - 1. Positive for q >= 5, k >= 1.
inline Int fprime_numerator(const Int& q, long k) {
  unsigned long uk = static_cast<unsigned long>(k);
  return (q - 4) * pow_int(q, 2 * uk + 1) + 2 * pow_int(q, uk + 1) + 2 * pow_int(q, 2 * uk) - 1;
}

// ---------------------------------------------------------------------------
// Improved lower bounds
// ---------------------------------------------------------------------------

// Admissibility window of the generic lower bound rho: 1 <= rho < 2n^2/(q+1).
inline bool rho_admissible(const Int& q, const Int& n, const Ratio& rho) {
  return rho >= 1 && rho < ratio(2 * n * n, q + 1);
}

// l_rho(q, n) = 2qn^2/(2qn^2 - 2n^2 + rho) + (2qn^2 - 2n^2 + rho)/(qn^2),
// cross-checked against its partial-fraction form on every call. Defined for
// any rho >= 0 with 2n^2(q-1) + rho != 0; admissibility is reported
// separately via rho_admissible.
inline Ratio l_rho(const Int& q, const Int& n, const Ratio& rho) {
  detail::require_q(q);
  if (n < 1) throw std::domain_error("l_rho: n must be >= 1");
  Int n2 = n * n;
  Ratio w = Ratio(Int(2 * q * n2 - 2 * n2)) + rho;  // 2n^2(q-1) + rho
  if (w == 0) throw std::domain_error("l_rho: degenerate parameters");
  Ratio qn2{Int(q * n2)};
  Ratio two_term = Ratio(Int(2 * q * n2)) / w + w / qn2;
  Ratio partial_fraction =
      ratio(3 * q * q - 4 * q + 2, q * (q - 1)) - rho * Ratio(q) / (Ratio(Int(q - 1)) * w) +
      rho / qn2;
  if (two_term != partial_fraction) throw std::logic_error("l_rho: route mismatch");
  return two_term;
}

inline Ratio l1(const Int& q, const Int& n) { return l_rho(q, n, Ratio(1)); }

// U(q) - l_rho(q,n) in the factored form
// ((q-3)n^2 + rho)(2n^2 - rho(q+1)) / (n^2 q (q+1) (2n^2(q-1) + rho)).
inline Ratio g1_minus_lrho_factored(const Int& q, const Int& n, const Ratio& rho) {
  Int n2 = n * n;
  Ratio num = (Ratio(Int((q - 3) * n2)) + rho) * (Ratio(Int(2 * n2)) - rho * Ratio(Int(q + 1)));
  Ratio den = Ratio(Int(n2 * q * (q + 1))) * (Ratio(Int(2 * n2 * (q - 1))) + rho);
  return num / den;
}

// ---------------------------------------------------------------------------
// Crossover-exponent solver
// ---------------------------------------------------------------------------

// Solution of g(K) = l_rho(q, n) for real K, via 2n^2/rho = (q^(K+1)-1)/(q-1).
// K itself is irrational in general and reported as a high-precision real;
// k_max and the bound comparison are derived from exact rational power
// comparisons only.
struct KSolve {
  Int q;
  Int n;
  Ratio rho;
  Ratio target;        // 2n^2(q-1)/rho + 1 = q^(K+1)
  long k_max = -1;     // largest integer k with q^(k+1) <= target, -1 if none
  Real K;              // log_q(target) - 1
  Real bound_rhs;      // log_q(2) + 2 log_q(n) - log_q(rho)
  bool admissible = false;    // rho within its admissibility window
  bool bound_holds = false;   // K < bound_rhs, decided exactly
};

inline KSolve solve_K(const Int& q, const Int& n, const Ratio& rho) {
  if (q < 2 || n < 1 || rho < 1) throw std::domain_error("solve_K: need q>=2, n>=1, rho>=1");
  KSolve s;
  s.q = q;
  s.n = n;
  s.rho = rho;
  Int n2 = n * n;
  s.target = Ratio(Int(2 * n2 * (q - 1))) / rho + 1;

  // exact power bracketing: q^(k_max+1) <= target < q^(k_max+2)
  s.k_max = -1;
  Int power = q;
  while (Ratio(power) <= s.target) {
    ++s.k_max;
    power *= q;
  }
  if (s.k_max >= 0) {
    bool low_ok = Ratio(pow_int(q, static_cast<unsigned long>(s.k_max + 1))) <= s.target;
    bool high_ok = s.target < Ratio(pow_int(q, static_cast<unsigned long>(s.k_max + 2)));
    if (!low_ok || !high_ok) throw std::logic_error("solve_K: bracket violated");
  }

  Real log_q = log(Real::of(q));
  s.K = log(Real::of(s.target)) / log_q - Real::of(1);
  s.bound_rhs = log(Real::of(ratio(2 * n2, 1) / rho)) / log_q;

  s.admissible = rho_admissible(q, n, rho);
  // K < bound_rhs  <=>  target < q * 2n^2/rho  <=>  target * rho < 2 q n^2
  s.bound_holds = s.target * rho < Ratio(Int(2 * q * n2));
  return s;
}

// ---------------------------------------------------------------------------
// Divisor-chain check (Descartes spoofs and genuine perfect numbers)
// ---------------------------------------------------------------------------

// Result of evaluating the five-member chain
//   sigma(n^2)/q^k = 2n^2/sigma~(q^k) = gcd(n^2, sigma(n^2))
//                  = D(n^2)/s~(q^k) = 2 s(n^2)/D~(q^k)
// where sigma~ treats the designated pseudo-prime q as if it were prime
// (sigma~(q^k) = 1 + q + ... + q^k) and all other factors use genuine sigma.
// The chain holds exactly when sigma~(m) = 2m.
struct ChainReport {
  Int q;          // the pseudo-prime
  unsigned k = 0; // its exponent
  Int n;          // square root of the remainder
  Int n_sq;
  Int sigma_n_sq;        // genuine sigma(n^2)
  Int pseudo_sigma;      // sigma~(q^k)
  std::array<Ratio, 5> members;
  std::array<bool, 4> adjacent_equal{};
  bool chain_holds = false;
  Int gcd_linear_form;      // q sigma(n^2) - 2(q-1) n^2
  bool linear_form_matches = false;  // gcd_linear_form == gcd(n^2, sigma(n^2))
};

inline constexpr std::array<std::string_view, 5> chain_member_names = {
    "sigma(n^2)/q^k", "2n^2/sigma~(q^k)", "gcd(n^2,sigma(n^2))", "D(n^2)/s~(q^k)",
    "2s(n^2)/D~(q^k)"};

inline ChainReport spoof_check(const arith::Factorization& m_factors, const Int& pseudo_prime) {
  ChainReport r;
  r.q = pseudo_prime;
  if (pseudo_prime < 2) throw std::domain_error("spoof_check: pseudo-prime must be >= 2");

  Int rest = 1;
  bool found = false;
  for (const auto& pp : m_factors.factors) {
    if (pp.prime == pseudo_prime) {
      r.k = pp.exponent;
      found = true;
    } else {
      if (!arith::is_prime(pp.prime))
        throw std::domain_error("spoof_check: non-pseudo factor base is not prime");
      rest *= pow_int(pp.prime, pp.exponent);
    }
  }
  if (!found || r.k == 0) throw std::domain_error("spoof_check: pseudo-prime not among factors");
  if (!mpz_perfect_square_p(rest.get_mpz_t()))
    throw std::domain_error("spoof_check: remainder is not a perfect square");

  r.n_sq = rest;
  mpz_sqrt(r.n.get_mpz_t(), rest.get_mpz_t());

  // genuine sigma over the non-pseudo factors
  arith::Factorization square_part;
  for (const auto& pp : m_factors.factors)
    if (pp.prime != pseudo_prime) square_part.factors.push_back(pp);
  r.sigma_n_sq = arith::sigma(square_part);

  r.pseudo_sigma = 0;
  Int qp = 1;
  for (unsigned i = 0; i <= r.k; ++i) {
    r.pseudo_sigma += qp;
    qp *= r.q;
  }
  Int q_to_k = pow_int(r.q, r.k);
  Int pseudo_aliquot = r.pseudo_sigma - q_to_k;        // s~(q^k) >= 1
  Int pseudo_deficiency = 2 * q_to_k - r.pseudo_sigma; // D~(q^k) >= 1 for q >= 2

  r.members[0] = ratio(r.sigma_n_sq, q_to_k);
  r.members[1] = ratio(2 * r.n_sq, r.pseudo_sigma);
  r.members[2] = Ratio(Int(gcd(r.n_sq, r.sigma_n_sq)));
  r.members[3] = ratio(2 * r.n_sq - r.sigma_n_sq, pseudo_aliquot);
  r.members[4] = ratio(2 * (r.sigma_n_sq - r.n_sq), pseudo_deficiency);

  r.chain_holds = true;
  for (int i = 0; i < 4; ++i) {
    r.adjacent_equal[i] = r.members[i] == r.members[i + 1];
    r.chain_holds = r.chain_holds && r.adjacent_equal[i];
  }
  r.gcd_linear_form = r.q * r.sigma_n_sq - 2 * (r.q - 1) * r.n_sq;
  r.linear_form_matches = Ratio(r.gcd_linear_form) == r.members[2];
  return r;
}

// The classical Descartes spoof 3^2 7^2 11^2 13^2 22021 with 22021 (= 19^2 61)
// treated as prime.
inline arith::Factorization descartes_factors() {
  arith::Factorization f;
  f.factors = {{Int(3), 2}, {Int(7), 2}, {Int(11), 2}, {Int(13), 2}, {Int(22021), 1}};
  return f;
}

inline constexpr long descartes_pseudo_prime = 22021;

// ---------------------------------------------------------------------------
// Aggregate report
// ---------------------------------------------------------------------------

struct BoundReport {
  Ratio L, U;
  std::optional<Ratio> g_k, f_k;
  std::optional<Ratio> l_1, l_r;
  std::map<std::string, bool> inequalities;
};

inline BoundReport bound_report(const Int& q, std::optional<long> k, std::optional<Int> n,
                                std::optional<Ratio> rho) {
  BoundReport r;
  r.L = L_bound(q);
  r.U = U_bound(q);
  r.inequalities["L<U"] = r.L < r.U;
  if (k) {
    r.g_k = g_of_k(q, *k);
    r.f_k = f_of_k(q, *k);
    r.inequalities["L<g"] = r.L < *r.g_k;
    r.inequalities["g<=U"] = *r.g_k <= r.U;
    r.inequalities["g==U only at k==1"] = (*r.g_k == r.U) == (*k == 1);
  }
  if (n) {
    r.l_1 = l1(q, *n);
    r.inequalities["L<l1"] = r.L < *r.l_1;
    r.inequalities["l1<U"] = *r.l_1 < r.U;
    if (rho) {
      r.l_r = l_rho(q, *n, *rho);
      r.inequalities["rho-admissible"] = rho_admissible(q, *n, *rho);
      r.inequalities["L<l_rho"] = r.L < *r.l_r;
      r.inequalities["l_rho<U"] = *r.l_r < r.U;
    }
  }
  return r;
}

}  // namespace opn::bounds
