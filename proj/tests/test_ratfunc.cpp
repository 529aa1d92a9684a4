#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "opn/ratfunc.hpp"

using namespace opn;
using namespace opn::ratfunc;

namespace {

const RatFunc Q = RatFunc::variable(Var::Q);
const RatFunc X = RatFunc::variable(Var::X);
const RatFunc N = RatFunc::variable(Var::N);

Poly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_terms(0, 4), expo(0, 2), coeff(-5, 5);
  Poly p;
  for (int t = n_terms(rng); t > 0; --t) {
    Poly mono(Ratio(coeff(rng)));
    for (Var v : all_vars) {
      for (int e = expo(rng); e > 0; --e) mono = mono * Poly::variable(v);
    }
    p = p + mono;
  }
  return p;
}

// Positive rationals > 1, so none of the identity denominators can vanish.
std::map<Var, Ratio> random_assignment(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(3, 60), den(1, 2);
  std::map<Var, Ratio> a;
  for (Var v : all_vars) a[v] = ratio(num(rng), den(rng));
  return a;
}

}  // namespace

TEST_CASE("poly arithmetic examples") {
  Poly q = Poly::variable(Var::Q);
  CHECK((q + 1) + (q - 1) == Poly(2) * q);
  CHECK((q - 1) * (q + 1) == q * q - 1);
  Poly p = q * q + Poly(3) * q - 7;
  CHECK((p + (-p)).is_zero());
  CHECK(Poly(0).is_zero());
  CHECK((Poly(2) - Poly(2)).is_zero());
}

TEST_CASE("cross-multiplied equality") {
  CHECK((Q * Q - 1) / (Q - 1) == Q + 1);
  CHECK_FALSE(1 / Q == 1 / (Q + 1));
  CHECK(RatFunc(Poly(0), Poly::variable(Var::Q)) == RatFunc(0));
}

TEST_CASE("field arithmetic examples") {
  RatFunc a = (Q + 3) / (Q * Q - 2);
  CHECK(a + 0 == a);
  CHECK((1 / Q) * (Q / 1) == 1);
  CHECK_THROWS_AS(a / RatFunc(0), std::domain_error);

  // building block of the improved lower bound: 2/y with y = 2(q-1)/q + 1/(q n^2)
  RatFunc y = 2 * (Q - 1) / Q + 1 / (Q * N);
  CHECK(2 / y == 2 * Q * N / (2 * Q * N - 2 * N + 1));
  CHECK(2 / y + y == 2 * Q * N / (2 * Q * N - 2 * N + 1) + (2 * Q * N - 2 * N + 1) / (Q * N));
}

TEST_CASE("partial derivatives") {
  CHECK((X * X).partial(Var::X) == RatFunc(2) * X);
  CHECK((1 / X).partial(Var::X) == -1 / (X * X));
  CHECK((Q * X).partial(Var::N) == RatFunc(0));
}

TEST_CASE("exact evaluation") {
  CHECK(((Q + 1) / Q).eval({{Var::Q, Ratio(5)}}) == ratio(6, 5));

  // the 3 - g closed form at q = 5, k = 1: (4)(16)/(5*4*24) = 2/15
  RatFunc f = (X - 1) * (Q * X - 2 * X + 1) / (X * (Q - 1) * (Q * X - 1));
  CHECK(f.eval({{Var::Q, Ratio(5)}, {Var::X, Ratio(5)}}) == ratio(2, 15));

  CHECK_THROWS_AS((1 / (Q - 1)).eval({{Var::Q, Ratio(1)}}), std::domain_error);
  CHECK_THROWS_AS(f.eval({{Var::Q, Ratio(5)}}), std::invalid_argument);  // X missing
}

TEST_CASE("all built-in identities verify") {
  for (IdentityTag tag : all_identity_tags) {
    CAPTURE(identity_name(tag));
    CHECK(verify_identity(tag));
  }
}

TEST_CASE("f-derivative closed form at a sample point") {
  // quotient rule by hand at (Q,X) = (5,5): X f'(X) = 5 * 896/230400 = 7/360
  auto sides = identity_sides(IdentityTag::FDerivative);
  std::map<Var, Ratio> at{{Var::Q, Ratio(5)}, {Var::X, Ratio(5)}};
  CHECK(sides[0].eval(at) == ratio(7, 360));
  CHECK(sides[1].eval(at) == ratio(224, 11520));
  CHECK(ratio(224, 11520) == ratio(7, 360));
}

TEST_CASE("perturbed identity fails") {
  auto sides = identity_sides(IdentityTag::LClosedForm);
  RatFunc mutated = sides[0] + 1 / Q;
  CHECK_FALSE(mutated == sides[1]);
  CHECK_FALSE(mutated == sides[2]);
  // and an off-by-one coefficient in a numerator
  RatFunc wrong = (3 * Q * Q - 4 * Q + 3) / (Q * (Q - 1));
  CHECK_FALSE(sides[0] == wrong);
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * Poly(1) == a);
    CHECK((a * Poly(0)).is_zero());
  }
}

TEST_CASE("quotient equality is an equivalence relation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Poly n = random_poly(rng), d = random_poly(rng), m1 = random_poly(rng),
         m2 = random_poly(rng);
    if (d.is_zero()) d = Poly(1);
    if (m1.is_zero()) m1 = Poly(1);
    if (m2.is_zero()) m2 = Poly(1);
    RatFunc a(n, d);
    RatFunc b(n * m1, d * m1);  // same quotient, different representative
    RatFunc c(n * m2, d * m2);
    CHECK(a == a);
    CHECK(b == a);  // symmetry partner of a == b below
    CHECK(a == b);
    CHECK(b == c);
    CHECK(a == c);  // transitivity
    RatFunc different = a + 1;
    CHECK_FALSE(a == different);
    CHECK_FALSE(different == a);
  }
}

TEST_CASE("symbolic and numeric layers agree on every identity") {
  std::mt19937 rng(99);
  for (IdentityTag tag : all_identity_tags) {
    CAPTURE(identity_name(tag));
    auto sides = identity_sides(tag);
    for (int trial = 0; trial < 100; ++trial) {
      auto at = random_assignment(rng);
      Ratio first = sides[0].eval(at);
      for (size_t i = 1; i < sides.size(); ++i) CHECK(sides[i].eval(at) == first);
    }
  }
}

TEST_CASE("partial derivative matches central finite difference") {
  std::mt19937 rng(4242);
  const Ratio h = ratio(1, 1 << 20);
  RatFunc f_expr = (X - 1) * (Q * X - 2 * X + 1) / (X * (Q - 1) * (Q * X - 1));
  const RatFunc funcs[] = {f_expr, (Q * X + 1) / (N * N + Q), X * X * N / (Q + 2)};
  for (const RatFunc& f : funcs) {
    for (int trial = 0; trial < 10; ++trial) {
      auto at = random_assignment(rng);
      for (Var v : {Var::Q, Var::X, Var::N}) {
        auto hi = at, lo = at;
        hi[v] += h;
        lo[v] -= h;
        double diff = Ratio((f.eval(hi) - f.eval(lo)) / (2 * h)).get_d();
        double exact = f.partial(v).eval(at).get_d();
        if (std::abs(exact) < 1e-12) continue;
        CHECK(std::abs(diff - exact) / std::abs(exact) <= 1e-6);
      }
    }
  }
}
