#include <catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "qha/cyclotomic.hpp"
#include "qha/errors.hpp"

using namespace qha;

namespace {

CycloNumber random_number(std::mt19937& rng, long M, int terms = 4) {
  std::uniform_int_distribution<long> e(0, M - 1), c(-5, 5), d(1, 4);
  CycloNumber x;
  for (int i = 0; i < terms; ++i) x += CycloNumber(Rational(c(rng), d(rng)), 1) * CycloNumber::root(M, e(rng));
  return x;
}

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-8 * (1 + std::abs(b)); }

int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}

}  // namespace

TEST_CASE("roots of unity", "[cyclotomic]") {
  for (long M : {1L, 2L, 3L, 4L, 9L, 12L, 15L, 45L, 81L}) {
    CHECK(CycloNumber::root(M, 0).is_one());
    CHECK(CycloNumber::root(M, M).is_one());
    CycloNumber s;
    for (long k = 0; k < M; ++k) s += CycloNumber::root(M, k);
    CHECK(s == CycloNumber(M == 1 ? 1 : 0));
    for (long k = 0; k < M; ++k) {
      auto z = CycloNumber::root(M, k);
      CHECK(z.root_exponent() == std::optional<long>(k));
      CHECK(z * CycloNumber::root(M, -k) == CycloNumber(1));
    }
  }
  CHECK(CycloNumber::root(9, 3) == CycloNumber::root(3, 1));
  CHECK(CycloNumber::root(4, 1) * CycloNumber::root(4, 1) == CycloNumber(-1));
}

TEST_CASE("sum of primitive roots is the Moebius function", "[cyclotomic]") {
  for (long M = 1; M <= 60; ++M) {
    CycloNumber s;
    for (long k = 0; k < M; ++k)
      if (gcd_l(k, M) == 1) s += CycloNumber::root(M, k);
    INFO("M = " << M);
    CHECK(s == CycloNumber(moebius(M)));
  }
}

TEST_CASE("quadratic Gauss sums", "[cyclotomic]") {
  auto z3 = [](long k) { return CycloNumber::root(3, k); };
  CHECK((z3(1) - z3(2)) * (z3(1) - z3(2)) == CycloNumber(-3));
  CycloNumber g5 = CycloNumber::root(5, 1) - CycloNumber::root(5, 2) - CycloNumber::root(5, 3) + CycloNumber::root(5, 4);
  CHECK(g5 * g5 == CycloNumber(5));
  CycloNumber g7;
  for (long a = 1; a < 7; ++a) g7 += (a == 1 || a == 2 || a == 4 ? 1 : -1) * CycloNumber::root(7, a);
  CHECK(g7 * g7 == CycloNumber(-7));
}

TEST_CASE("cyclotomic polynomials", "[cyclotomic]") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclotomic_polynomial(15) == std::vector<long>{1, -1, 0, 1, -1, 1, 0, -1, 1});
  CHECK(cyclotomic_polynomial(105).size() == 49);
  for (long M = 1; M <= 100; ++M) CHECK(static_cast<long>(cyclotomic_polynomial(M).size()) == euler_phi(M) + 1);
}

TEST_CASE("field axioms against floating point and the polynomial remainder", "[cyclotomic]") {
  std::mt19937 rng(7);
  for (long M : {3L, 9L, 15L, 20L, 45L, 81L}) {
    for (int t = 0; t < 30; ++t) {
      auto a = random_number(rng, M), b = random_number(rng, M), c = random_number(rng, M);
      CHECK(near((a * b + c).approx(), a.approx() * b.approx() + c.approx()));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - b) + b == a);
      // structural equality agrees with reduction modulo Phi_M
      auto r = reduce_mod_cyclotomic(a * b - b * a);
      CHECK(std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; }));
      bool zero_rem = true;
      for (auto& q : reduce_mod_cyclotomic(a - c)) zero_rem = zero_rem && q == 0;
      CHECK(zero_rem == (a == c));
      if (!a.is_zero()) {
        CHECK(a * a.inv() == CycloNumber(1));
        CHECK(near(a.inv().approx(), 1.0 / a.approx()));
      }
    }
  }
}

TEST_CASE("mixed conductors", "[cyclotomic]") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto a = random_number(rng, 9), b = random_number(rng, 25);
    auto s = a + b;
    CHECK(s.conductor() % 225 == 0);
    CHECK(near(s.approx(), a.approx() + b.approx()));
    CHECK(a.embed(45) == a);
    CHECK(s - b == a);
  }
}

TEST_CASE("division by zero", "[cyclotomic]") {
  CHECK_THROWS_AS(CycloNumber(0).inv(), DivisionByZero);
  CycloNumber z = CycloNumber(1) + CycloNumber::root(3, 1) + CycloNumber::root(3, 2);
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.inv(), DivisionByZero);
}

TEST_CASE("term construction", "[cyclotomic]") {
  auto x = cyclo_from_terms(6, {{0, Rational(1)}, {2, Rational(1)}, {4, Rational(1)}});
  CHECK(x.is_zero());
  auto y = cyclo_from_terms(4, {{1, Rational(1, 2)}, {5, Rational(1, 2)}});
  CHECK(y == CycloNumber::root(4, 1));
}
