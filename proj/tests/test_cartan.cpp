#include <catch_amalgamated.hpp>

#include <set>

#include "qha/cartan.hpp"
#include "qha/errors.hpp"

using namespace qha;

namespace {

IntMatrix chain(int n) {
  IntMatrix A(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) A[i][i] = 2;
  for (int i = 0; i + 1 < n; ++i) A[i][i + 1] = A[i + 1][i] = -1;
  return A;
}

IntMatrix b_type(int n) {  // double bond at the end, a_{n-1,n} = -2
  auto A = chain(n);
  A[n - 2][n - 1] = -2;
  return A;
}

IntMatrix d_type(int n) {
  auto A = chain(n);
  A[n - 2][n - 1] = A[n - 1][n - 2] = 0;
  A[n - 3][n - 1] = A[n - 1][n - 3] = -1;
  return A;
}

IntMatrix e_type(int n) {  // Bourbaki labels, 0-based: 0-2-3-4-..., branch 1-3
  IntMatrix A(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) A[i][i] = 2;
  auto link = [&](int i, int j) { A[i][j] = A[j][i] = -1; };
  link(0, 2);
  link(1, 3);
  link(2, 3);
  for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
  return A;
}

IntMatrix f4() {
  auto A = chain(4);
  A[1][2] = -2;
  return A;
}

IntMatrix g2() { return {{2, -1}, {-3, 2}}; }

// closure of the simple roots under reflections: independent count of positive roots
std::set<Root> orbit_roots(const IntMatrix& A) {
  int n = static_cast<int>(A.size());
  std::set<Root> seen, todo;
  for (int i = 0; i < n; ++i) {
    Root a(n, 0);
    a[i] = 1;
    todo.insert(a);
  }
  while (!todo.empty()) {
    Root r = *todo.begin();
    todo.erase(todo.begin());
    if (!seen.insert(r).second) continue;
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int j = 0; j < n; ++j) s += A[i][j] * r[j];
      Root t = r;
      t[i] -= s;
      if (!seen.count(t)) todo.insert(t);
    }
  }
  std::set<Root> pos;
  for (auto& r : seen)
    if (std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; })) pos.insert(r);
  return pos;
}

}  // namespace

TEST_CASE("classification of connected types", "[cartan]") {
  struct Case {
    IntMatrix A;
    std::string type;
    std::size_t positive;
  };
  std::vector<Case> cases{{chain(1), "A1", 1},  {chain(3), "A3", 6},   {b_type(3), "B3", 9},
                          {b_type(2), "B2", 4}, {d_type(4), "D4", 12}, {d_type(5), "D5", 20},
                          {e_type(6), "E6", 36}, {e_type(7), "E7", 63}, {e_type(8), "E8", 120},
                          {f4(), "F4", 24},      {g2(), "G2", 6}};
  for (auto& c : cases) {
    INFO(c.type);
    auto comps = classify(c.A);
    REQUIRE(comps.size() == 1);
    auto pos = positive_roots(c.A);
    CHECK(pos.size() == c.positive);
    CHECK(std::set<Root>(pos.begin(), pos.end()) == orbit_roots(c.A));
    auto w = longest_word(c.A);
    CHECK(w.size() == c.positive);
  }
  auto t = classify(b_type(3))[0].type;
  CHECK((t == "B3" || t == "C3"));
  CHECK(classify(g2())[0].type == "G2");
  CHECK(classify(f4())[0].type == "F4");
  CHECK(classify(e_type(7))[0].type == "E7");
}

TEST_CASE("disconnected matrices split into components", "[cartan]") {
  IntMatrix A{{2, 0, 0}, {0, 2, -1}, {0, -1, 2}};
  auto comps = classify(A);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].type == "A1");
  CHECK(comps[1].type == "A2");
  CHECK(positive_roots(A).size() == 4);
}

TEST_CASE("convex order from the longest word", "[cartan]") {
  for (auto A : {chain(3), b_type(3), d_type(4), f4(), g2()}) {
    auto w = longest_word(A);
    auto order = convex_order(A, w);
    std::set<Root> got(order.begin(), order.end());
    CHECK(got.size() == order.size());
    CHECK(got == orbit_roots(A));
    // convexity: if beta_i + beta_k = beta_j is a root sum, j lies between i and k
    std::map<Root, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t k = i + 1; k < order.size(); ++k) {
        Root s = order[i];
        for (std::size_t x = 0; x < s.size(); ++x) s[x] += order[k][x];
        if (auto it = pos.find(s); it != pos.end()) CHECK((it->second > i && it->second < k));
      }
  }
  CHECK(longest_word(chain(2)) == std::vector<int>{0, 1, 0});
}

TEST_CASE("symmetrizer", "[cartan]") {
  auto check = [](const IntMatrix& A) {
    auto d = symmetrizer(A);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < A.size(); ++j) CHECK(d[i] * A[i][j] == d[j] * A[j][i]);
    return d;
  };
  CHECK(check(chain(3)) == std::vector<long>{1, 1, 1});
  CHECK(check(g2()) == std::vector<long>{3, 1});
  auto db = check(b_type(3));
  CHECK(*std::min_element(db.begin(), db.end()) == 1);
  check(f4());
}

TEST_CASE("reflections", "[cartan]") {
  auto A = chain(2);
  CHECK(reflect(A, 0, {1, 0}) == Root{-1, 0});
  CHECK(reflect(A, 0, {0, 1}) == Root{1, 1});
  CHECK(height({1, 2, 1}) == 4);
}

TEST_CASE("invalid matrices", "[cartan]") {
  CHECK_THROWS_AS(classify({{2, -1}, {0, 2}}), NotCartan);
  CHECK_THROWS_AS(classify({{3}}), NotCartan);
  CHECK_THROWS_AS(classify({{2, 1}, {1, 2}}), NotCartan);
  CHECK_THROWS_AS(classify({{2, -2}, {-2, 2}}), NotFiniteType);
  CHECK_THROWS_AS(classify({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), NotFiniteType);
}
