#include "qha/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qha/errors.hpp"

namespace qha {

namespace {

void check_axioms(const IntMatrix& A) {
  std::size_t n = A.size();
  for (auto& row : A)
    if (row.size() != n) throw NotCartan("matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i][i] != 2) throw NotCartan("diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (A[i][j] > 0) throw NotCartan("positive off-diagonal entry");
      if ((A[i][j] == 0) != (A[j][i] == 0)) throw NotCartan("a_ij = 0 but a_ji != 0");
    }
  }
}

std::vector<std::vector<int>> components_of(const IntMatrix& A) {
  int n = static_cast<int>(A.size());
  std::vector<int> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w = 0; w < n; ++w)
        if (w != v && A[v][w] != 0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// walk a path from an endpoint
std::vector<int> walk(const IntMatrix& A, const std::vector<int>& comp, int start) {
  std::vector<int> path{start};
  int prev = -1, cur = start;
  while (true) {
    int next = -1;
    for (int w : comp)
      if (w != cur && w != prev && A[cur][w] != 0) next = w;
    if (next < 0) break;
    path.push_back(next);
    prev = cur;
    cur = next;
  }
  return path;
}

DynkinComponent match(const IntMatrix& A, const std::vector<int>& comp) {
  DynkinComponent d;
  d.vertices = comp;
  int r = static_cast<int>(comp.size());
  d.rank = r;
  std::map<int, std::vector<int>> adj;
  int edges = 0, multi = 0;
  std::pair<int, int> multi_edge{-1, -1};
  int multi_val = 1;
  for (int i : comp)
    for (int j : comp) {
      if (i >= j || A[i][j] == 0) continue;
      long m = A[i][j] * A[j][i];
      if (m > 3) throw NotFiniteType("edge multiplicity a_ij a_ji = " + std::to_string(m));
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
      if (m > 1) {
        ++multi;
        multi_edge = {i, j};
        multi_val = static_cast<int>(m);
      }
    }
  if (edges != r - 1) throw NotFiniteType("Dynkin diagram contains a cycle");
  auto deg = [&](int v) { return static_cast<int>(adj[v].size()); };
  auto set = [&](char s, const std::vector<int>& lab) {
    d.series = s;
    d.labeling = lab;
    d.type = std::string(1, s) + std::to_string(r);
  };
  if (r == 1) {
    set('A', comp);
    return d;
  }
  if (multi > 1) throw NotFiniteType("more than one multiple edge");
  if (multi_val == 3) {
    if (r != 2) throw NotFiniteType("triple edge in rank > 2");
    auto [i, j] = multi_edge;
    // short root first
    set('G', std::abs(A[i][j]) == 3 ? std::vector<int>{i, j} : std::vector<int>{j, i});
    return d;
  }
  int maxdeg = 0;
  for (int v : comp) maxdeg = std::max(maxdeg, deg(v));
  if (multi_val == 2) {
    if (maxdeg > 2) throw NotFiniteType("branched diagram with a double edge");
    auto [i, j] = multi_edge;
    if (r == 2) {
      set('B', std::abs(A[i][j]) == 2 ? std::vector<int>{i, j} : std::vector<int>{j, i});
      return d;
    }
    int end = -1;
    for (int v : comp)
      if (deg(v) == 1 && v != i && v != j) end = v;
    std::vector<int> path = walk(A, comp, end);
    int pi = static_cast<int>(std::find(path.begin(), path.end(), i) - path.begin());
    int pj = static_cast<int>(std::find(path.begin(), path.end(), j) - path.begin());
    int a = std::min(pi, pj), b = std::max(pi, pj);
    if (b == r - 1) {
      // double edge at the end: the last vertex is short for B, long for C
      int last = path[r - 1], before = path[r - 2];
      set(std::abs(A[last][before]) == 2 ? 'B' : 'C', path);
      return d;
    }
    if (r == 4 && a == 1 && b == 2) {
      // F4: long roots first in the standard labeling
      int x = path[1], y = path[2];
      if (std::abs(A[x][y]) == 2) std::reverse(path.begin(), path.end());
      set('F', path);
      return d;
    }
    throw NotFiniteType("double edge in an unsupported position");
  }
  if (maxdeg <= 2) {
    int start = -1;
    for (int v : comp)
      if (deg(v) == 1) {
        start = v;
        break;
      }
    set('A', walk(A, comp, start));
    return d;
  }
  if (maxdeg > 3) throw NotFiniteType("vertex of degree > 3");
  int branch = -1, nbranch = 0;
  for (int v : comp)
    if (deg(v) == 3) {
      branch = v;
      ++nbranch;
    }
  if (nbranch != 1) throw NotFiniteType("more than one branch point");
  std::vector<std::vector<int>> arms;
  for (int w : adj[branch]) {
    std::vector<int> arm{w};
    int prev = branch, cur = w;
    while (deg(cur) == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    arms.push_back(arm);
  }
  std::sort(arms.begin(), arms.end(), [](auto& x, auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::size_t p = arms[0].size(), q = arms[1].size(), s = arms[2].size();
  if (p == 1 && q == 1) {
    // D_n: long arm, branch, then the two leaves
    std::vector<int> lab(arms[2].rbegin(), arms[2].rend());
    lab.push_back(branch);
    lab.push_back(arms[0][0]);
    lab.push_back(arms[1][0]);
    set('D', lab);
    return d;
  }
  if (p == 1 && q == 2 && s >= 2 && s <= 4) {
    // Bourbaki E_n: 1 - 3 - 4 - 5 ..., with 2 attached to 4
    std::vector<int> lab(r);
    lab[0] = arms[1][1];
    lab[2] = arms[1][0];
    lab[3] = branch;
    lab[1] = arms[0][0];
    for (std::size_t t = 0; t < s; ++t) lab[4 + t] = arms[2][t];
    set('E', lab);
    return d;
  }
  throw NotFiniteType("branched diagram of infinite type");
}

}  // namespace

std::vector<DynkinComponent> classify(const IntMatrix& A) {
  check_axioms(A);
  std::vector<DynkinComponent> out;
  for (auto& comp : components_of(A)) out.push_back(match(A, comp));
  return out;
}

std::vector<long> symmetrizer(const IntMatrix& A) {
  classify(A);
  int n = static_cast<int>(A.size());
  std::vector<long> num(n, 0), den(n, 1);
  for (auto& comp : components_of(A)) {
    num[comp[0]] = 1;
    std::vector<int> stack{comp[0]};
    std::set<int> seen{comp[0]};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j : comp) {
        if (j == i || A[i][j] == 0 || seen.count(j)) continue;
        // d_j = d_i a_ij / a_ji
        num[j] = num[i] * A[i][j];
        den[j] = den[i] * A[j][i];
        if (den[j] < 0) num[j] = -num[j], den[j] = -den[j];
        long g = std::gcd(num[j], den[j]);
        num[j] /= g, den[j] /= g;
        seen.insert(j);
        stack.push_back(j);
      }
    }
    long L = 1;
    for (int i : comp) L = std::lcm(L, den[i]);
    long G = 0;
    for (int i : comp) G = std::gcd(G, num[i] * (L / den[i]));
    for (int i : comp) {
      num[i] = num[i] * (L / den[i]) / G;
      den[i] = 1;
    }
  }
  return num;
}

Root reflect(const IntMatrix& A, int i, const Root& beta) {
  long s = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += A[i][j] * beta[j];
  Root r = beta;
  r[i] -= s;
  return r;
}

namespace {

int sign(const Root& r) {
  bool pos = false, neg = false;
  for (long x : r) {
    pos |= x > 0;
    neg |= x < 0;
  }
  if (pos && neg) throw NotFiniteType("mixed-sign root");
  return pos ? 1 : (neg ? -1 : 0);
}

Root simple(std::size_t n, int i) {
  Root r(n, 0);
  r[i] = 1;
  return r;
}

}  // namespace

std::vector<Root> positive_roots(const IntMatrix& A) {
  classify(A);
  std::size_t n = A.size();
  std::set<Root> found;
  std::vector<Root> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    found.insert(simple(n, static_cast<int>(i)));
    frontier.push_back(simple(n, static_cast<int>(i)));
  }
  while (!frontier.empty()) {
    Root b = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      Root r = reflect(A, static_cast<int>(i), b);
      if (sign(r) > 0 && found.insert(r).second) {
        if (found.size() > 100000) throw NotFiniteType("root closure does not terminate");
        frontier.push_back(r);
      }
    }
  }
  std::vector<Root> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    long ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

std::vector<int> longest_word(const IntMatrix& A) {
  std::size_t P = positive_roots(A).size();
  std::size_t n = A.size();
  std::vector<int> word;
  auto apply = [&](const Root& a) {
    Root r = a;
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect(A, *it, r);
    return r;
  };
  while (word.size() < P) {
    bool grew = false;
    for (std::size_t i = 0; i < n; ++i)
      if (sign(apply(simple(n, static_cast<int>(i)))) > 0) {
        word.push_back(static_cast<int>(i));
        grew = true;
        break;
      }
    if (!grew) break;
  }
  return word;
}

std::vector<Root> convex_order(const IntMatrix& A, const std::vector<int>& word) {
  std::vector<Root> out;
  std::size_t n = A.size();
  for (std::size_t l = 0; l < word.size(); ++l) {
    Root r = simple(n, word[l]);
    for (std::size_t t = l; t-- > 0;) r = reflect(A, word[t], r);
    out.push_back(r);
  }
  return out;
}

long height(const Root& r) { return std::accumulate(r.begin(), r.end(), 0L); }

RootSystem root_system(const IntMatrix& A) {
  RootSystem R;
  R.matrix = A;
  R.components = classify(A);
  R.word = longest_word(A);
  R.positive = convex_order(A, R.word);
  for (auto& b : R.positive) {
    int comp = -1;
    for (std::size_t c = 0; c < R.components.size(); ++c)
      for (int v : R.components[c].vertices)
        if (b[v] != 0) comp = static_cast<int>(c);
    R.component_of_root.push_back(comp);
  }
  return R;
}

}  // namespace qha
