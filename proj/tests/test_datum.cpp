#include <catch_amalgamated.hpp>

#include <random>

#include "qha/datum.hpp"
#include "qha/errors.hpp"

using namespace qha;

namespace {

// Gamma membership straight from the congruences, no progressions
bool gamma_oracle(const CartanDatum& D, const std::vector<long>& c, const std::map<std::pair<int, int>, long>& c2) {
  const auto& m = D.base.orders();
  int n = static_cast<int>(m.size());
  for (int j = 0; j < n; ++j)
    for (std::size_t i = 0; i < D.theta(); ++i)
      if (mod_l(D.h[i][j] - c[j] * D.r[i][j], m[j]) != 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long v = c2.at({i, j});
      if (v * m[i] % m[j] != 0) return false;
      for (std::size_t l = 0; l < D.theta(); ++l)
        if (v * D.r[l][j] % m[j] != 0) return false;
    }
  return true;
}

struct Brute {
  long count = 0;
  bool all_agree = true;
};

Brute brute_gamma(const CartanDatum& D, const GammaSet& S) {
  const auto& m = D.base.orders();
  int n = static_cast<int>(m.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<long> ranges(m.begin(), m.end());
  for (auto [i, j] : pairs) ranges.push_back(gcd_l(m[i], m[j]));
  std::vector<long> digit(ranges.size(), 0);
  Brute b;
  for (;;) {
    std::vector<long> c(digit.begin(), digit.begin() + n);
    std::map<std::pair<int, int>, long> c2;
    CocycleParams p(D.base);
    p.c = c;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      c2[pairs[k]] = digit[n + k];
      if (digit[n + k]) p.c2[pairs[k]] = digit[n + k];
    }
    bool in = gamma_oracle(D, c, c2);
    b.count += in;
    if (in != S.contains(p) || in != in_gamma(D, p)) b.all_agree = false;
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == ranges[k]) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return b;
}

CartanDatum random_datum(std::mt19937& rng) {
  static const std::vector<std::vector<long>> groups{{3},    {9},    {5},    {15},  {27},     {3, 3},   {3, 9},
                                                     {2, 4}, {5, 5}, {3, 15}, {9, 9}, {2, 2, 2}, {3, 3, 3}, {7, 7}};
  const auto& m = groups[rng() % groups.size()];
  AbGroup G(m);
  DoubledGroup DG(G);
  std::size_t theta = 1 + rng() % 3;
  std::vector<long> planted(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) planted[j] = static_cast<long>(rng() % m[j]);
  bool plant = rng() % 3 != 0;
  std::vector<Elt> h;
  IntMatrix r;
  for (std::size_t i = 0; i < theta; ++i) {
    Elt hi(m.size());
    std::vector<long> ri(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
      long M = DG.big.orders()[j];
      ri[j] = static_cast<long>(rng() % M);
      hi[j] = plant ? mod_l(planted[j] * ri[j] + m[j] * static_cast<long>(rng() % m[j]), M) : static_cast<long>(rng() % M);
    }
    h.push_back(hi);
    r.push_back(ri);
  }
  IntMatrix A(theta, std::vector<long>(theta, 0));
  for (std::size_t i = 0; i < theta; ++i) A[i][i] = 2;
  return CartanDatum(G, h, r, A);
}

}  // namespace

TEST_CASE("Gamma for the quasi sl2 example", "[datum][gamma]") {
  auto fo = factory_sl2_quasi(3, 3, 3);
  auto S = solve_gamma(fo.datum);
  REQUIRE_FALSE(S.empty());
  CHECK(S.str() == "c_1={0,3,6}");
  CHECK(S.size() == 3);
  for (long c = 0; c < 9; ++c) {
    CocycleParams p(fo.datum.base);
    p.c[0] = c;
    CHECK(S.contains(p) == (c % 3 == 0));
  }
  CHECK(fo.datum.base.order() == 9);
  CHECK(dimension(fo.datum) == 81);
}

TEST_CASE("Gamma solver against brute force on random data", "[datum][gamma]") {
  std::mt19937 rng(2024);
  int nonempty = 0;
  for (int t = 0; t < 60; ++t) {
    auto D = random_datum(rng);
    REQUIRE(D.base.order() <= 200);
    auto S = solve_gamma(D);
    auto b = brute_gamma(D, S);
    INFO("trial " << t << " group order " << D.base.order());
    CHECK(b.all_agree);
    CHECK(mpz_class(b.count) == S.size());
    CHECK(S.empty() == (b.count == 0));
    nonempty += b.count > 0;
    if (auto c = S.canonical()) {
      CHECK(S.contains(*c));
      CHECK_FALSE(c->is_zero());
    }
  }
  CHECK(nonempty >= 20);
}

TEST_CASE("congruence listing", "[datum][gamma]") {
  auto fo = factory_sl2_quasi(3, 3, 3);
  auto cs = gamma_conditions(fo.datum);
  REQUIRE_FALSE(cs.empty());
  for (auto& c : cs) {
    CHECK(c.var == "c_1");
    CHECK(c.n >= 1);
  }
}

TEST_CASE("datum validation", "[datum]") {
  auto ok = factory_sl2_quasi(3, 3, 3).datum;
  auto rep = validate_datum(ok);
  CHECK(rep.ok());
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].N == 3);

  auto bad = ok;
  bad.A = {{2, -1}, {-1, 2}};
  auto r2 = validate_datum(bad);
  CHECK_FALSE(r2.ok());
  REQUIRE(r2.first_failure());
  CHECK(r2.first_failure()->name.find("q_ij q_ji") != std::string::npos);

  auto range = ok;
  range.r[0][0] = 81;
  CHECK_FALSE(validate_datum(range).ok());

  auto notcartan = ok;
  notcartan.A = {{2, 1}, {1, 2}};
  CHECK_FALSE(validate_datum(notcartan).ok());
}

TEST_CASE("rank-2 table data", "[datum]") {
  for (std::string t : {"A2", "B2"}) {
    auto fo = factory_rank2(t, 5, 7, 3);
    auto rep = validate_datum(fo.datum);
    INFO(t);
    CHECK(rep.ok());
    CHECK(component_order(fo.datum, 0) == 9);
    auto S = solve_gamma(fo.datum);
    CHECK_FALSE(S.empty());
    CHECK(S.all_c_nonzero());
    CHECK(validate_rootparams(fo.datum, fo.mu).ok());
  }
  // the printed G2 row violates q_12 q_21 = q_11^{a_12}
  auto g2 = factory_rank2("G2", 5, 7, 11);
  auto rep = validate_datum(g2.datum);
  CHECK_FALSE(rep.ok());
  CHECK(rep.first_failure()->name.find("q_ij q_ji") != std::string::npos);
  CHECK_THROWS_AS(factory_rank2("G2", 3, 7, 11), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_rank2("A3", 5, 7, 3), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_rank2("A2", 5, 5, 3), InvalidFactoryParams);
}

TEST_CASE("series data", "[datum]") {
  struct Row {
    std::string type;
    int n;
  };
  for (auto [type, n] : std::vector<Row>{{"A", 3}, {"B", 3}, {"C", 3}, {"D", 4}}) {
    auto fo = factory_series(type, n, 5, 7, 3);
    INFO(type << n);
    auto rep = validate_datum(fo.datum);
    CHECK(rep.ok());
    for (auto& c : rep.components) CHECK(c.N == 9);
    auto S = solve_gamma(fo.datum);
    CHECK_FALSE(S.empty());
    CHECK(S.all_c_nonzero());
    CHECK(admissible_mu_support(fo.datum) == series_mu_support(type, n));
    CHECK(validate_rootparams(fo.datum, fo.mu).ok());
  }
  // beyond the smallest rank, non-adjacent even nodes share generators and q_ij q_ji != 1
  for (auto [type, n] : std::vector<Row>{{"A", 4}, {"B", 5}, {"C", 4}, {"D", 5}}) {
    auto rep = validate_datum(factory_series(type, n, 5, 7, 3).datum);
    INFO(type << n);
    CHECK_FALSE(rep.ok());
    CHECK(rep.first_failure()->name.find("q_ij q_ji") != std::string::npos);
  }
  CHECK_THROWS_AS(factory_series("A", 2, 5, 7, 3), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_series("Z", 3, 5, 7, 3), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_series("A", 3, 5, 7, 7), InvalidFactoryParams);
}

TEST_CASE("factory parameter checks", "[datum]") {
  CHECK_THROWS_AS(factory_sl2_quasi(4, 3, 0), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_sl2_quasi(3, 3, 4), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_small_qgroup({{2}}, 3, 15, 15, {1}), InvalidFactoryParams);
  CHECK_THROWS_AS(factory_small_qgroup({{2, -1}, {-1, 2}}, 3, 15, 5, {1}), InvalidFactoryParams);
  auto fo = factory_small_qgroup({{2}}, 3, 15, 5, {1});
  CHECK(validate_datum(fo.datum).ok());
  CHECK(in_gamma(fo.datum, *fo.c));
  CHECK(dimension(fo.datum) == 405);
  auto cyc = factory_cyclic(3, {1}, {1});
  CHECK(dimension(cyc.datum) == 27);
  REQUIRE(cyc.c);
  CHECK(cyc.c->c == std::vector<long>{1});
}

TEST_CASE("linking parameters", "[datum]") {
  auto fo = factory_sl2_quasi(3, 3, 3);
  CHECK(validate_linking(fo.datum, fo.lambda).ok());
  auto A2 = factory_rank2("A2", 5, 7, 3);
  Linking bad{{{0, 1}, CycloNumber(1)}};
  CHECK_FALSE(validate_linking(A2.datum, bad).ok());
}

TEST_CASE("root vector parameters", "[datum]") {
  auto fo = factory_sl2_quasi(3, 3, 3);
  CHECK(validate_rootparams(fo.datum, {}).ok());
  CHECK(admissible_mu_support(fo.datum).empty());
  RootParams mu{{{1, 0}, CycloNumber(1)}};
  CHECK_FALSE(validate_rootparams(fo.datum, mu).ok());
  auto A2 = factory_rank2("A2", 5, 7, 3);
  auto terms = u_alpha_terms(A2.datum, A2.mu, {1, 0});
  CHECK_FALSE(terms.empty());
  CHECK(u_alpha_terms(A2.datum, A2.mu, {0, 1}).empty());
}
