#include <catch_amalgamated.hpp>

#include "qha/algebra.hpp"
#include "qha/cohomology.hpp"
#include "qha/errors.hpp"

using namespace qha;

namespace {

std::shared_ptr<QuasiHopfAlgebra> make(const FactoryOutput& fo, long budget = 0) {
  return build(fo.datum, fo.lambda, fo.mu, fo.c ? *fo.c : CocycleParams(fo.datum.base), budget);
}

const QuasiHopfAlgebra& rank1() {
  static auto H = make(factory_cyclic(3, {1}, {1}));
  return *H;
}

const QuasiHopfAlgebra& sl2q(long c) {
  static std::map<long, std::shared_ptr<QuasiHopfAlgebra>> cache;
  auto& H = cache[c];
  if (!H) H = make(factory_sl2_quasi(3, 3, c));
  return *H;
}

}  // namespace

TEST_CASE("rewriting with idempotent shifts", "[rewriting]") {
  // one letter over Z_3 shifting idempotents by 1, with X^3 = 0
  AbGroup G({3});
  RewriteSystem rs(G, {1}, 1);
  Word x(1, '\0');
  for (long f = 0; f < 3; ++f) rs.add(Poly{{x + x + x, CycloNumber(1)}}, f);
  rs.complete(8);
  CHECK(rs.rule_count() == 3);
  for (long f = 0; f < 3; ++f) {
    CHECK(rs.reducible(x + x + x, f));
    CHECK_FALSE(rs.reducible(x + x, f));
    CHECK(rs.reduce(Poly{{x + x + x + x, CycloNumber(1)}}, f).empty());
  }
  CHECK(rs.left_idem(x + x, 0) == 1);
}

TEST_CASE("completion resolves overlaps", "[rewriting]") {
  // yx -> xy and xx -> 0 on a trivial group: yxx must reduce to 0 either way
  AbGroup G({1});
  RewriteSystem rs(G, {0, 0}, 2);
  Word x(1, '\0'), y(1, '\1');
  rs.add(Poly{{y + x, CycloNumber(1)}, {x + y, CycloNumber(-1)}}, 0);
  rs.add(Poly{{x + x, CycloNumber(1)}}, 0);
  rs.add(Poly{{y + y, CycloNumber(1)}}, 0);
  rs.complete(6);
  CHECK(rs.reduce(Poly{{y + x + x, CycloNumber(1)}}, 0).empty());
  auto r = rs.reduce(Poly{{y + x, CycloNumber(1)}}, 0);
  REQUIRE(r.size() == 1);
  CHECK(r.begin()->first == x + y);
}

TEST_CASE("braided commutators and root vectors", "[algebra]") {
  auto fo = factory_rank2("A2", 5, 7, 3);
  const auto& D = fo.datum;
  auto rv = root_vector(D, {1, 1});
  REQUIRE(rv.size() == 2);
  Word x01{'\0', '\1'}, x10{'\1', '\0'};
  CHECK(rv.at(x01) == CycloNumber(1));
  CHECK(rv.at(x10) == -D.q(0, 1));
  CHECK(root_vector(D, {1, 0}) == Poly{{Word(1, '\0'), CycloNumber(1)}});
  CHECK(mod_l(braid_exp(D, {1, 0}, {0, 1}) - D.q_exp(0, 1), D.conductor()) == 0);
  CHECK(top_degree(factory_cyclic(3, {1}, {1}).datum) == 8);
}

TEST_CASE("dimensions of the small builds", "[algebra]") {
  CHECK(rank1().dim() == 27);
  CHECK(sl2q(3).dim() == 81);
  CHECK(sl2q(0).dim() == 81);
  // every basis word is irreducible
  const auto& H = sl2q(3);
  for (long b = 0; b < static_cast<long>(H.dim()); ++b) {
    CHECK_FALSE(H.rewriting().reducible(H.word(b), H.rid(b)));
    CHECK(H.index_of(H.word(b), H.rid(b)) == b);
  }
}

TEST_CASE("relations hold in the built algebra", "[algebra]") {
  for (const QuasiHopfAlgebra* H : {&rank1(), &sl2q(3)})
    for (auto& r : H->relations()) {
      INFO(r.str());
      CHECK(H->residue(r).is_zero());
    }
}

TEST_CASE("group elements and idempotents", "[algebra]") {
  const auto& H = sl2q(3);
  const AbGroup& G = H.group();
  AlgElt s;
  for (long f = 0; f < G.order(); ++f) s += H.idem(f);
  CHECK(s == H.one());
  for (auto& g : G.elements())
    for (auto& h : G.elements()) CHECK(H.mul(H.group_elt(g), H.group_elt(h)) == H.group_elt(G.add(g, h)));
  auto x = H.gen(0);
  CHECK(H.mul(H.one(), x) == x);
  CHECK(H.mul(x, H.one()) == x);
  CHECK(H.pow(x, 3).is_zero());
  CHECK_FALSE(H.pow(x, 2).is_zero());
}

TEST_CASE("Psi agrees with the J_c ratio", "[algebra][oracle]") {
  // Psi_l(f, g) = J(f - eta_l, g) / J(f, g) on canonical lifts to the doubled group
  for (const QuasiHopfAlgebra* H : {&rank1(), &sl2q(3)}) {
    const auto& D = H->datum();
    const AbGroup& G = D.base;
    long Lj = jc_conductor(G);
    for (int l = 0; l < static_cast<int>(D.theta()); ++l)
      for (long f = 0; f < G.order(); ++f)
        for (long g = 0; g < G.order(); ++g) {
          Elt fh = G.element(f), gh = G.element(g);
          Elt eta(D.r[l].begin(), D.r[l].end());
          long e = jc_exp(H->params(), D.big.sub(fh, eta), gh) - jc_exp(H->params(), fh, gh);
          CHECK(H->psi(l, f, g) == CycloNumber::root(Lj, e));
        }
  }
}

TEST_CASE("Upsilon is the inverse of phi(g, g^-1, g)", "[algebra][oracle]") {
  for (const QuasiHopfAlgebra* H : {&rank1(), &sl2q(3), &sl2q(0)}) {
    const AbGroup& G = H->group();
    auto ph = phi(H->params());
    for (long g = 0; g < G.order(); ++g) {
      Elt x = G.element(g);
      CHECK(H->upsilon(g) == ph(x, G.neg(x), x).inv());
    }
  }
}

TEST_CASE("frozen structure constants", "[algebra][oracle]") {
  // values recorded from the oracles above on the rank-one build (L = 9)
  const auto& H = rank1();
  REQUIRE(H.conductor() == 9);
  std::vector<long> ups, psi0;
  for (long g = 0; g < 3; ++g) ups.push_back(H.upsilon_exp(g));
  for (long f = 0; f < 3; ++f)
    for (long g = 0; g < 3; ++g) psi0.push_back(H.psi_exp(0, f, g));
  CHECK(ups == std::vector<long>{0, 6, 3});
  CHECK(psi0 == std::vector<long>{0, 3, 6, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("trivial associator at c = 0", "[algebra]") {
  const auto& H = sl2q(0);
  CHECK(H.alpha() == H.one());
  auto P = H.associator();
  auto one = H.tensor({H.one(), H.one(), H.one()});
  CHECK(P == one);
  const auto& Hc = sl2q(3);
  CHECK_FALSE(Hc.associator() == Hc.tensor({Hc.one(), Hc.one(), Hc.one()}));
}

TEST_CASE("build errors", "[algebra]") {
  auto fo = factory_sl2_quasi(3, 3, 3);
  CocycleParams bad(fo.datum.base);
  bad.c[0] = 1;
  CHECK_THROWS_AS(build(fo.datum, fo.lambda, fo.mu, bad), GammaViolation);
  CHECK_THROWS_AS(build(fo.datum, fo.lambda, fo.mu, *fo.c, 50), BudgetExceeded);
  auto broken = fo.datum;
  broken.A = {{2, -1}, {-1, 2}};
  CHECK_THROWS_AS(build(broken, fo.lambda, fo.mu, *fo.c), BuildRejected);
  CHECK(resolve_budget(123) == 123);
}

TEST_CASE("E/F presentation of the quasi sl2 example", "[algebra][ef]") {
  auto P = ef_presentation(sl2q(3));
  CHECK(P.n == 1);
  CHECK(P.relations.ok());
  CHECK(P.u_plus == 3);
  CHECK(P.u_minus == 3);
  std::map<std::string, bool> got;
  for (auto& c : P.closed_forms.checks) got[c.name] = c.ok;
  CHECK(got.at("D(E0) = sum Psi_i(f,g) E 1_f (x) 1_g + h (x) E"));
  CHECK(got.at("D(F0) = sum Psi_{i+n}(f,g) chi_g(h) F 1_f (x) 1_g + 1 (x) F"));
  CHECK_FALSE(got.at("D(F0) = sum Psi_{i+n}(f,g) chi_g(h^-1) F 1_f (x) 1_g + 1 (x) F"));
  CHECK(got.at("S(E0) = sum F_i(g) E 1_g"));
  CHECK(got.at("S(F0) = chi_{i+n}(h) sum chi_g(h^-2) F_{i+n}(g) F 1_g"));
  CHECK_FALSE(got.at("S(F0) = chi_i(h)^-1 sum chi_g(h) F_{i+n}(g) F 1_g"));
  CHECK_FALSE(got.at("S(F0) = chi_{i+n}(h) sum chi_g(h^2) F_{i+n}(g) F 1_g"));
  // with lambda = q^-1 - q the commutator is (q - q^-1)(h - h^-1), not the printed quotient
  CHECK_FALSE(got.at("E0 F0 - F E = (h - h^-1)/(q - q^-1)"));
  CHECK(got.at("dim u+ |G| dim u- = dim H"));
  CHECK_THROWS_AS(ef_presentation(rank1()), NotDoubledDatum);
}

TEST_CASE("E/F commutator with the rescaled linking parameter", "[algebra][ef]") {
  // lambda = 1/(q^-1 - q) makes the printed closed form hold
  auto q = CycloNumber::root(81, 27);
  auto fo = factory_sl2_quasi(3, 3, 3, (q.inv() - q).inv());
  auto H = make(fo);
  auto P = ef_presentation(*H);
  CHECK(P.relations.ok());
  for (auto& c : P.closed_forms.checks)
    if (c.name.rfind("E0 F0 - F E = (h", 0) == 0) CHECK(c.ok);
}
