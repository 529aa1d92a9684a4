// Minimal exact symbolic engine: sparse polynomials over exact rationals in
// a fixed variable set, and formal quotients of such polynomials.
//
// The variable set is closed by design:
//   Q — the prime q
//   X — q^k (so q^(k+1) is written Q*X)
//   N — n^2
//   R — the lower-bound parameter rho
//   S — a free symbol standing for sigma(n^2)
//
// Everything the engine does reduces to one primitive: two quotients A/B and
// C/D are equal iff A*D - C*B is the zero polynomial. No polynomial gcd, no
// simplification; denominators here never grow past degree ~6.

#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opn/arith.hpp"

namespace opn::ratfunc {

enum class Var : int { Q = 0, X = 1, N = 2, R = 3, S = 4 };

inline constexpr int var_count = 5;
inline constexpr std::array<Var, var_count> all_vars = {Var::Q, Var::X, Var::N, Var::R, Var::S};

inline char var_letter(Var v) {
  static constexpr char names[var_count] = {'Q', 'X', 'N', 'R', 'S'};
  return names[static_cast<int>(v)];
}

using Monomial = std::array<int, var_count>;  // exponent per variable

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

class Poly {
 public:
  Poly() = default;
  Poly(long c) : Poly(Ratio(c)) {}  // NOLINT: implicit by design, enables 3 - f
  Poly(const Ratio& c) {
    if (c != 0) terms_[Monomial{}] = c;
  }

  static Poly variable(Var v) {
    Poly p;
    Monomial m{};
    m[static_cast<int>(v)] = 1;
    p.terms_[m] = Ratio(1);
    return p;
  }

  const std::map<Monomial, Ratio>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (int i = 0; i < var_count; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  // Formal partial derivative.
  Poly partial(Var v) const {
    const int idx = static_cast<int>(v);
    Poly r;
    for (const auto& [m, c] : terms_) {
      if (m[idx] == 0) continue;
      Monomial d = m;
      d[idx] -= 1;
      r.add_term(d, c * Ratio(m[idx]));
    }
    return r;
  }

  // Exact evaluation. The assignment must cover every variable that occurs.
  Ratio eval(const std::map<Var, Ratio>& assignment) const {
    Ratio total(0);
    for (const auto& [m, c] : terms_) {
      Ratio term = c;
      for (int i = 0; i < var_count; ++i) {
        if (m[i] == 0) continue;
        auto it = assignment.find(static_cast<Var>(i));
        if (it == assignment.end())
          throw std::invalid_argument(std::string("eval: no value for variable ") +
                                      var_letter(static_cast<Var>(i)));
        term *= pow_ratio(it->second, static_cast<unsigned long>(m[i]));
      }
      total += term;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.get_str();
      for (int i = 0; i < var_count; ++i) {
        if (m[i] == 0) continue;
        out += ' ';
        out += var_letter(static_cast<Var>(i));
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
      }
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const Ratio& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0) terms_[m] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<Monomial, Ratio> terms_;  // no zero coefficients stored
};

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT: implicit by design
  RatFunc(const Ratio& c) : num_(c), den_(1) {}
  RatFunc(Poly num, Poly den = Poly(1)) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
  }

  static RatFunc variable(Var v) { return RatFunc(Poly::variable(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Cross-multiplied equality: A/B == C/D iff A*D - C*B == 0.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.num_.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  // Quotient-rule partial derivative: (N/D)' = (N'D - ND')/D^2.
  RatFunc partial(Var v) const {
    return RatFunc(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
  }

  // Exact evaluation; throws if the denominator vanishes at the point.
  Ratio eval(const std::map<Var, Ratio>& assignment) const {
    Ratio d = den_.eval(assignment);
    if (d == 0) throw std::domain_error("RatFunc::eval: pole at assignment point");
    return num_.eval(assignment) / d;
  }

  std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

 private:
  Poly num_, den_;
};

// ---------------------------------------------------------------------------
// Built-in identities
// ---------------------------------------------------------------------------

enum class IdentityTag {
  LClosedForm,            // (a)
  UClosedForm,            // (b)
  DOfPrimePower,          // (c)
  CommonValue,            // (d)
  ThreeMinusSum,          // (e)
  GPartialFractions,      // (f)
  FDerivative,            // (g)
  GcdIdentityAlgebra,     // (h)
  L1PartialFractions,     // (i)
  L1PositivityNumerator,  // (j)
  G1MinusL1,              // (k)
  LRhoPartialFractions,   // (l)
  LRhoPositivity,         // (m)
  G1MinusLRho,            // (n)
};

inline constexpr std::array<IdentityTag, 14> all_identity_tags = {
    IdentityTag::LClosedForm,         IdentityTag::UClosedForm,
    IdentityTag::DOfPrimePower,       IdentityTag::CommonValue,
    IdentityTag::ThreeMinusSum,       IdentityTag::GPartialFractions,
    IdentityTag::FDerivative,         IdentityTag::GcdIdentityAlgebra,
    IdentityTag::L1PartialFractions,  IdentityTag::L1PositivityNumerator,
    IdentityTag::G1MinusL1,           IdentityTag::LRhoPartialFractions,
    IdentityTag::LRhoPositivity,      IdentityTag::G1MinusLRho,
};

inline std::string_view identity_name(IdentityTag tag) {
  switch (tag) {
    case IdentityTag::LClosedForm: return "L-closed-form";
    case IdentityTag::UClosedForm: return "U-closed-form";
    case IdentityTag::DOfPrimePower: return "D-of-prime-power";
    case IdentityTag::CommonValue: return "common-value";
    case IdentityTag::ThreeMinusSum: return "three-minus-sum";
    case IdentityTag::GPartialFractions: return "g-partial-fractions";
    case IdentityTag::FDerivative: return "f-derivative";
    case IdentityTag::GcdIdentityAlgebra: return "gcd-identity-algebra";
    case IdentityTag::L1PartialFractions: return "l1-partial-fractions";
    case IdentityTag::L1PositivityNumerator: return "l1-positivity-numerator";
    case IdentityTag::G1MinusL1: return "g1-minus-l1";
    case IdentityTag::LRhoPartialFractions: return "lrho-partial-fractions";
    case IdentityTag::LRhoPositivity: return "lrho-positivity";
    case IdentityTag::G1MinusLRho: return "g1-minus-lrho";
  }
  throw std::invalid_argument("identity_name: unknown tag");
}

inline char identity_letter(IdentityTag tag) {
  return static_cast<char>('a' + static_cast<int>(tag));
}

// All algebraically-equal forms of the named identity (two or three sides).
// Verification means: every side equals every other under cross-multiplied
// equality.
inline std::vector<RatFunc> identity_sides(IdentityTag tag) {
  const RatFunc Q = RatFunc::variable(Var::Q);
  const RatFunc X = RatFunc::variable(Var::X);
  const RatFunc N = RatFunc::variable(Var::N);
  const RatFunc R = RatFunc::variable(Var::R);
  const RatFunc S = RatFunc::variable(Var::S);

  // recurring pieces
  const RatFunc L_sum = 2 * (Q - 1) / Q + Q / (Q - 1);
  const RatFunc L_closed = (3 * Q * Q - 4 * Q + 2) / (Q * (Q - 1));
  const RatFunc U_closed = (3 * Q * Q + 2 * Q + 1) / (Q * (Q + 1));
  const RatFunc sigma_qk = (Q * X - 1) / (Q - 1);             // sigma(q^k)
  const RatFunc i_qk = (Q * X - 1) / (X * (Q - 1));           // I(q^k)
  const RatFunc i_n2 = 2 * X * (Q - 1) / (Q * X - 1);         // I(n^2) = 2/I(q^k)
  const RatFunc f_expr =
      (X - 1) * (Q * X - 2 * X + 1) / (X * (Q - 1) * (Q * X - 1));  // 3 - (I+I)
  const RatFunc w1 = 2 * Q * N - 2 * N + 1;                   // 2n^2(q-1) + 1
  const RatFunc wr = 2 * Q * N - 2 * N + R;                   // 2n^2(q-1) + rho
  const RatFunc l1_pf = L_closed - Q / ((Q - 1) * w1) + 1 / (Q * N);
  const RatFunc lrho_pf = L_closed - R * Q / ((Q - 1) * wr) + R / (Q * N);

  switch (tag) {
    case IdentityTag::LClosedForm:
      return {L_sum, L_closed, 3 - (Q - 2) / (Q * (Q - 1))};
    case IdentityTag::UClosedForm:
      return {2 * Q / (Q + 1) + (Q + 1) / Q, U_closed, 3 - (Q - 1) / (Q * (Q + 1))};
    case IdentityTag::DOfPrimePower:
      return {2 * X - sigma_qk, (Q * X - 2 * X + 1) / (Q - 1)};
    case IdentityTag::CommonValue:
      return {((Q * X - 2 * X + 1) / (Q - 1)) * (2 * N * (X - 1) / (Q * X - 1)),
              2 * N * (X - 1) * (Q * X - 2 * X + 1) / ((Q - 1) * (Q * X - 1))};
    case IdentityTag::ThreeMinusSum:
      return {i_qk + i_n2, 3 - f_expr};
    case IdentityTag::GPartialFractions:
      return {i_qk + i_n2, L_closed + 2 * (Q - 1) / (Q * (Q * X - 1)) - 1 / (X * (Q - 1))};
    case IdentityTag::FDerivative:
      return {X * f_expr.partial(Var::X),
              ((Q - 4) * Q * X * X + 2 * Q * X + 2 * X * X - 1) /
                  (X * (Q - 1) * (Q * X - 1) * (Q * X - 1))};
    case IdentityTag::GcdIdentityAlgebra:
      return {S - (Q - 1) * (2 * N - S), Q * S - 2 * (Q - 1) * N};
    case IdentityTag::L1PartialFractions:
      return {2 * Q * N / w1 + w1 / (Q * N), l1_pf};
    case IdentityTag::L1PositivityNumerator:
      return {-Q / ((Q - 1) * w1) + 1 / (Q * N),
              (Q * N * (Q - 4) + Q + 2 * N - 1) / (Q * N * (Q - 1) * w1)};
    case IdentityTag::G1MinusL1:
      return {U_closed - l1_pf,
              ((Q - 3) * N + 1) * (2 * N - Q - 1) / (N * Q * (Q + 1) * w1)};
    case IdentityTag::LRhoPartialFractions:
      return {2 * Q * N / wr + wr / (Q * N), lrho_pf};
    case IdentityTag::LRhoPositivity:
      return {-R * Q / ((Q - 1) * wr) + R / (Q * N),
              R * (Q * N * (Q - 4) + R * (Q - 1) + 2 * N) / (Q * N * (Q - 1) * wr)};
    case IdentityTag::G1MinusLRho:
      return {U_closed - lrho_pf,
              ((Q - 3) * N + R) * (2 * N - R * (Q + 1)) / (N * Q * (Q + 1) * wr)};
  }
  throw std::invalid_argument("identity_sides: unknown tag");
}

inline bool verify_identity(IdentityTag tag) {
  const auto sides = identity_sides(tag);
  for (size_t i = 0; i + 1 < sides.size(); ++i)
    for (size_t j = i + 1; j < sides.size(); ++j)
      if (!(sides[i] == sides[j])) return false;
  return true;
}

}  // namespace opn::ratfunc
