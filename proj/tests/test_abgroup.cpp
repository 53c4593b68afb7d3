#include <catch_amalgamated.hpp>

#include "qha/abgroup.hpp"
#include "qha/errors.hpp"

using namespace qha;

TEST_CASE("element arithmetic and indexing", "[abgroup]") {
  AbGroup G({3, 9, 2});
  CHECK(G.order() == 54);
  CHECK(G.exponent() == 18);
  auto els = G.elements();
  REQUIRE(els.size() == 54);
  for (long i = 0; i < G.order(); ++i) {
    CHECK(G.index(els[i]) == i);
    CHECK(G.add(els[i], G.neg(els[i])) == G.identity());
    CHECK(G.add_idx(i, G.neg_idx(i)) == 0);
  }
  CHECK(G.element(1) == Elt{1, 0, 0});
  CHECK(G.element(3) == Elt{0, 1, 0});
  CHECK(G.reduce({-1, 10, 3}) == Elt{2, 1, 1});
  CHECK(G.scale({1, 2, 1}, 4) == Elt{1, 8, 0});
  CHECK_FALSE(G.contains({3, 0, 0}));
  CHECK_THROWS_AS(G.char_exp({1, 0}, {1, 0, 0}), GroupMismatch);
}

TEST_CASE("characters are bimultiplicative", "[abgroup]") {
  AbGroup G({3, 5});
  for (auto& a : G.elements())
    for (auto& b : G.elements()) {
      CHECK(G.character(a, b) == G.character(b, a));
      for (auto& c : G.elements()) CHECK(G.character(a, G.add(b, c)) == G.character(a, b) * G.character(a, c));
    }
}

TEST_CASE("idempotents are orthogonal and complete", "[abgroup]") {
  for (auto orders : std::vector<std::vector<long>>{{3}, {3, 3}, {2, 4}}) {
    AbGroup G(orders);
    GroupAlgebraElt sum(G);
    auto one = GroupAlgebraElt::basis(G, G.identity());
    for (auto& f : G.elements()) {
      auto e = idempotent(G, f);
      sum += e;
      CHECK(e * e == e);
      CHECK(counit_idem(G, f) == CycloNumber(f == G.identity() ? 1 : 0));
      for (auto& g : G.elements()) {
        if (g != f) CHECK((e * idempotent(G, g)).is_zero());
        // 1_f h = chi_f(h)^{-1} 1_f
        CHECK(e * GroupAlgebraElt::basis(G, g) == G.character(f, g).inv() * e);
      }
    }
    CHECK(sum == one);
  }
}

TEST_CASE("doubled group", "[abgroup]") {
  AbGroup G({3, 5});
  DoubledGroup D(G);
  CHECK(D.big.orders() == std::vector<long>{9, 25});
  for (auto& g : G.elements()) {
    auto x = D.iota(g);
    CHECK(D.in_image(x));
    CHECK(D.iota_inv(x) == g);
  }
  CHECK_FALSE(D.in_image({1, 0}));
  CHECK_THROWS_AS(D.iota_inv({1, 0}), DoesNotDescend);
  CHECK(D.project({7, 13}) == Elt{1, 3});
  // characters pulled back through iota: chi_{iota g}(iota h) = chi_g(h)^m
  AbGroup C({3});
  DoubledGroup D3(C);
  for (auto& g : C.elements())
    for (auto& h : C.elements()) CHECK(D3.big.character(g, D3.iota(h)) == C.character(g, h));
}

TEST_CASE("reduction with defect", "[abgroup]") {
  CHECK(reduce_with_defect(7, 5) == std::pair<long, long>{2, -5});
  CHECK(reduce_with_defect(-1, 5) == std::pair<long, long>{4, 5});
  CHECK(reduce_with_defect(3, 5) == std::pair<long, long>{3, 0});
}
