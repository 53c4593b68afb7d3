#include <catch_amalgamated.hpp>

#include <random>

#include "qha/cohomology.hpp"
#include "qha/errors.hpp"
#include "qha/linalg.hpp"

using namespace qha;

namespace {

// phi_c written out from the product formula, exponent of zeta_L with L = lcm of all moduli
CycloNumber phi_oracle(const CocycleParams& c, const Elt& i, const Elt& j, const Elt& k) {
  const auto& m = c.group.orders();
  int n = static_cast<int>(m.size());
  long L = c.group.exponent();
  long e = 0;
  for (int l = 0; l < n; ++l) e += (L / m[l]) * c.c[l] * k[l] * ((i[l] + j[l]) / m[l]);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      e += (L / m[t]) * c.get2(s, t) * k[t] * ((i[s] + j[s]) / m[s]);
      for (int u = t + 1; u < n; ++u) {
        long g = gcd_l(gcd_l(m[s], m[t]), m[u]);
        e += (L / g) * c.get3(s, t, u) * i[s] * j[t] * k[u];
      }
    }
  return CycloNumber::root(L, e);
}

}  // namespace

TEST_CASE("phi_c agrees with the product formula", "[cohomology]") {
  for (auto orders : std::vector<std::vector<long>>{{3}, {9}, {3, 3}, {2, 4}, {3, 3, 3}}) {
    AbGroup G(orders);
    auto els = G.elements();
    std::mt19937 rng(3);
    auto all = CocycleParams::enumerate(G);
    for (int t = 0; t < 6; ++t) {
      const auto& c = all[rng() % all.size()];
      auto f = phi(c);
      for (int s = 0; s < 200; ++s) {
        const auto& a = els[rng() % els.size()];
        const auto& b = els[rng() % els.size()];
        const auto& d = els[rng() % els.size()];
        INFO(c.str());
        CHECK(f(a, b, d) == phi_oracle(c, a, b, d));
        CHECK(omega(c)(d, b, a) == f(a, b, d));
      }
    }
  }
}

TEST_CASE("standard representatives are normalized cocycles", "[cohomology]") {
  for (auto orders : std::vector<std::vector<long>>{{3}, {4}, {2, 2}, {3, 3}, {2, 2, 2}}) {
    AbGroup G(orders);
    for (auto& c : CocycleParams::enumerate(G)) {
      auto f = phi(c);
      CHECK(is_normalized(f));
      CHECK(is_3cocycle(f));
      CHECK(is_3cocycle(omega(c)));
    }
  }
}

TEST_CASE("a corrupted value breaks the cocycle identity", "[cohomology]") {
  AbGroup G({3, 3});
  CocycleParams c(G);
  c.c = {1, 2};
  auto f = phi(c);
  REQUIRE(is_3cocycle(f));
  CHECK_FALSE(is_3cocycle(f.with_entry(4, 5, 7, 2)));
  CHECK_FALSE(is_normalized(f.with_entry(5, 0, 7, 1)));
}

TEST_CASE("coboundary decisions", "[cohomology]") {
  AbGroup G({3, 3});
  CoboundaryDecider dec(G);
  for (auto& c : CocycleParams::enumerate(G)) {
    auto f = phi(c);
    CHECK(is_coboundary(f).coboundary == c.is_zero());
    CHECK(dec.is_coboundary(c) == c.is_zero());
    f.params.reset();
    auto r = is_coboundary(f, false);
    CHECK(r.method == "smith");
    CHECK(r.coboundary == c.is_zero());
  }
}

TEST_CASE("the Smith path finds a witness for a random coboundary", "[cohomology]") {
  std::mt19937 rng(5);
  for (auto orders : std::vector<std::vector<long>>{{3}, {9}, {3, 3}, {2, 6}}) {
    AbGroup G(orders);
    long n = G.order();
    long M = 18;
    std::vector<long> table(n * n);
    for (long a = 1; a < n; ++a)
      for (long b = 1; b < n; ++b) table[a * n + b] = static_cast<long>(rng() % M);
    auto J = Cochain2::from_table(G, M, table);
    auto f = coboundary(J);
    f.params.reset();
    REQUIRE(is_3cocycle(f));
    auto r = is_coboundary(f, false);
    REQUIRE(r.coboundary);
    REQUIRE(r.witness);
    auto g = coboundary(*r.witness);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c)
          CHECK(g(G.element(a), G.element(b), G.element(c)) == f(G.element(a), G.element(b), G.element(c)));
  }
}

TEST_CASE("sigma is an involution preserving coboundaries", "[cohomology]") {
  AbGroup G({3, 3});
  for (auto& c : CocycleParams::enumerate(G)) {
    auto s = sigma(sigma(phi(c)));
    for (long a = 0; a < G.order(); a += 2)
      for (long b = 0; b < G.order(); b += 3)
        for (long d = 0; d < G.order(); ++d) CHECK(s.exp(a, b, d) == phi(c).exp(a, b, d));
  }
  auto J = Cochain2::from_table(G, 9, std::vector<long>(81, 0));
  CHECK(is_coboundary(sigma(coboundary(J)), false).coboundary);
}

TEST_CASE("cochains from explicit values", "[cohomology]") {
  AbGroup G({2});
  std::vector<CycloNumber> v(8, CycloNumber(1));
  v[7] = CycloNumber(-1);
  auto f = cochain3_from_values(G, v);
  CHECK(is_3cocycle(f));
  CHECK_FALSE(is_coboundary(f, false).coboundary);
  v[7] = CycloNumber(2);
  CHECK_THROWS_AS(cochain3_from_values(G, v), NotRootOfUnityValued);
}

TEST_CASE("parameter enumeration and validation", "[cohomology]") {
  CHECK(CocycleParams::enumerate(AbGroup({3, 9})).size() == 81);
  CHECK(CocycleParams::enumerate(AbGroup({3, 3, 3})).size() == 2187);
  CHECK(CocycleParams::enumerate(AbGroup({3, 3, 3}), false).size() == 729);
  CocycleParams c(AbGroup({3, 5}));
  c.c2[{0, 1}] = 1;
  CHECK_THROWS_AS(c.validate(), SchemaError);
  CHECK_FALSE(is_abelian([] {
    CocycleParams p(AbGroup({3, 3, 3}));
    p.c3[{0, 1, 2}] = 1;
    return p;
  }()));
}

TEST_CASE("linear congruences", "[linalg]") {
  for (long n = 1; n <= 30; ++n)
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) {
        auto p = solve_linear_congruence(a, b, n);
        std::vector<long> brute;
        for (long x = 0; x < n; ++x)
          if ((a * x - b) % n == 0) brute.push_back(x);
        REQUIRE(p.has_value() == !brute.empty());
        if (!p) continue;
        CHECK(p->base == brute.front());
        for (long x : brute) CHECK((x - p->base) % p->step == 0);
        CHECK(static_cast<long>(brute.size()) == (n + p->step - 1 - p->base) / p->step);
      }
}

TEST_CASE("generalized CRT", "[linalg]") {
  for (long n1 = 1; n1 <= 12; ++n1)
    for (long n2 = 1; n2 <= 12; ++n2)
      for (long b1 = 0; b1 < n1; ++b1)
        for (long b2 = 0; b2 < n2; ++b2) {
          auto r = crt_merge({b1, n1}, {b2, n2});
          long L = lcm_l(n1, n2);
          std::optional<long> first;
          for (long x = 0; x < L && !first; ++x)
            if (x % n1 == b1 && x % n2 == b2) first = x;
          REQUIRE(r.has_value() == first.has_value());
          if (r) {
            CHECK(r->base == *first);
            CHECK(r->step == L);
          }
        }
}

TEST_CASE("Smith solver on random systems", "[linalg]") {
  std::mt19937 rng(9);
  for (long n : {9L, 12L, 27L, 45L}) {
    for (int t = 0; t < 40; ++t) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 3;
      std::vector<std::vector<long>> A(rows, std::vector<long>(cols));
      for (auto& r : A)
        for (auto& x : r) x = static_cast<long>(rng() % n);
      std::vector<long> x0(cols), b(rows, 0);
      for (auto& x : x0) x = static_cast<long>(rng() % n);
      bool solvable = rng() % 2;
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) b[i] = (b[i] + A[i][j] * x0[j]) % n;
        if (!solvable) b[i] = static_cast<long>(rng() % n);
      }
      auto x = smith_solve(A, b, cols, n);
      // brute force solvability on small systems
      bool any = false;
      std::vector<long> y(cols, 0);
      for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < rows && ok; ++i) {
          long s = 0;
          for (std::size_t j = 0; j < cols; ++j) s += A[i][j] * y[j];
          ok = mod_l(s - b[i], n) == 0;
        }
        if (ok) {
          any = true;
          break;
        }
        std::size_t j = 0;
        while (j < cols && ++y[j] == n) y[j++] = 0;
        if (j == cols) break;
      }
      REQUIRE(x.has_value() == any);
      if (x)
        for (std::size_t i = 0; i < rows; ++i) {
          long s = 0;
          for (std::size_t j = 0; j < cols; ++j) s += A[i][j] * (*x)[j];
          CHECK(mod_l(s - b[i], n) == 0);
        }
    }
  }
}
