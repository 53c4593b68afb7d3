#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qha/datum.hpp"
#include "qha/errors.hpp"

namespace qha {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidFactoryParams(what);
}

bool odd(long x) { return x > 0 && x % 2 == 1; }

// Builder for data given by character tables: chi_i(g_j) = zeta_den^e.
struct Table {
  std::vector<long> orders;
  std::vector<long> big;
  std::vector<Elt> h;
  IntMatrix r;

  explicit Table(std::vector<long> o) : orders(std::move(o)) {
    for (long m : orders) big.push_back(m * m);
  }
  std::size_t n() const { return orders.size(); }

  // h = prod_{j in js} g_j^e, 1-based indices
  void add_h(const std::vector<int>& js, long e) {
    Elt x(n(), 0);
    for (int j : js) x[j - 1] = mod_l(e, big[j - 1]);
    h.push_back(x);
  }
  void new_chi() { r.emplace_back(n(), 0); }
  void set(int j, long den, long e) {
    long M = big[j - 1];
    require(M % den == 0, "zeta_" + std::to_string(den) + " is not a value on a generator of order " +
                              std::to_string(M));
    r.back()[j - 1] = mod_l(static_cast<long>(static_cast<__int128>(mod_l(e, den)) * (M / den) % M), M);
  }
};

std::vector<int> range_incl(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

IntMatrix diag2(std::size_t n) {
  IntMatrix A(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) A[i][i] = 2;
  return A;
}

void link(IntMatrix& A, int i, int j, long aij = -1, long aji = -1) {
  A[i - 1][j - 1] = aij;
  A[j - 1][i - 1] = aji;
}

void require_coprime_odd(const std::vector<std::pair<std::string, long>>& xs) {
  for (auto& [name, v] : xs) require(odd(v), name + " must be a positive odd integer");
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      require(std::gcd(xs[i].second, xs[j].second) == 1, xs[i].first + " and " + xs[j].first + " must be coprime");
}

}  // namespace

FactoryOutput factory_cyclic(long m, const std::vector<long>& s, const std::vector<long>& r, IntMatrix A) {
  require(m >= 1, "m >= 1");
  require(s.size() == r.size(), "s and r must have the same length");
  if (A.empty()) A = diag2(s.size());
  require(A.size() == s.size(), "Cartan matrix size must equal the number of h_i");
  AbGroup G({m});
  std::vector<Elt> h;
  IntMatrix rr;
  for (std::size_t i = 0; i < s.size(); ++i) {
    h.push_back({mod_l(s[i], m * m)});
    rr.push_back({mod_l(r[i], m * m)});
  }
  FactoryOutput out;
  out.datum = CartanDatum(G, h, rr, A, "cyclic");
  out.c = solve_gamma(out.datum).canonical();
  std::ostringstream os;
  os << "cyclic m=" << m;
  out.recipe = os.str();
  return out;
}

FactoryOutput factory_sl2_quasi(long N, long d, long c, std::optional<CycloNumber> lambda) {
  require(N > 2 && odd(N), "N must be odd and > 2");
  require(odd(d), "d must be a positive odd integer");
  long m = N * d;
  require(c >= 0 && c < m, "0 <= c <= m-1");
  require(c % N == 0, "c must be a multiple of N");
  AbGroup G({m});
  long M = m * m;
  std::vector<Elt> h{{m}, {m}};
  IntMatrix r{{mod_l(2 * d, M)}, {mod_l(-2 * d, M)}};
  FactoryOutput out;
  out.datum = CartanDatum(G, h, r, diag2(2), "sl2-quasi");
  CycloNumber q = CycloNumber::root(M, m * d);
  out.lambda[{0, 1}] = lambda ? *lambda : q.inv() - q;
  CocycleParams p(G);
  p.c[0] = c;
  out.c = p;
  out.recipe = "sl2-quasi N=" + std::to_string(N) + " d=" + std::to_string(d) + " c=" + std::to_string(c);
  return out;
}

FactoryOutput factory_rank2(const std::string& type, long m, long n, long d) {
  long a, b, k;
  IntMatrix A = diag2(2);
  if (type == "A2") {
    a = 1, b = -3, k = 0;
    link(A, 1, 2, -1, -1);
  } else if (type == "B2") {
    a = 1, b = -3, k = -1;
    link(A, 1, 2, -1, -2);
  } else if (type == "G2") {
    a = 3, b = -6, k = -4;
    link(A, 1, 2, -1, -3);
  } else {
    throw InvalidFactoryParams("rank-2 type must be A2, B2 or G2");
  }
  require_coprime_odd({{"m", m}, {"n", n}, {"d", d}});
  if (type == "G2") require(m % 3 && n % 3 && d % 3, "m, n, d must be prime to 3 for G2");
  long d2 = d * d, d4 = d2 * d2;
  Table T({m * d, n * d, m * d2, n * d2});
  T.add_h({1, 2}, m * n);
  T.add_h({1, 2, 3, 4}, m * n);
  T.new_chi();
  T.set(1, d2, a), T.set(2, d2, a), T.set(3, d2, b), T.set(4, d2, b);
  T.new_chi();
  T.set(1, d2, a), T.set(2, d2, a), T.set(3, d4, 1), T.set(4, d4, k * d2 - 1);
  FactoryOutput out;
  out.datum = CartanDatum(AbGroup(T.orders), T.h, T.r, A, type);
  out.mu[{1, 0}] = CycloNumber(1);
  out.c = solve_gamma(out.datum).canonical();
  out.recipe = "rank2 type=" + type + " m=" + std::to_string(m) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
  return out;
}

FactoryOutput factory_small_qgroup(const IntMatrix& A, long N, long p, long l, const std::vector<long>& k,
                                   const CycloNumber& lambda) {
  std::vector<DynkinComponent> comps;
  try {
    comps = classify(A);
  } catch (const Error& e) {
    throw InvalidFactoryParams(std::string("Cartan matrix: ") + e.what());
  }
  std::size_t n = A.size();
  require(odd(N) && N > 1, "N must be odd and > 1");
  for (auto& c : comps)
    if (c.series == 'G') require(N % 3 != 0, "N must be prime to 3 for G2");
  require(p >= 1, "p >= 1");
  long m = p * N;
  require(l >= 1 && l < m, "1 <= l <= m-1");
  require((l * p) % m != 0, "lp != 0 mod m");
  require(k.size() == n, "one k_i per simple root");
  std::vector<long> d = symmetrizer(A);
  long M = m * m;
  AbGroup G(std::vector<long>(n, m));
  std::vector<Elt> h(2 * n, Elt(n, 0));
  IntMatrix r(2 * n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    h[i][i] = h[i + n][i] = mod_l(m * l, M);
    for (std::size_t j = 0; j < n; ++j) {
      long e = i == j ? 2 * p * d[i] : p * d[i] * A[i][j];
      r[i][j] = mod_l(e, M);
      r[i + n][j] = mod_l(-e, M);
    }
  }
  IntMatrix DA(2 * n, std::vector<long>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) DA[i][j] = DA[i + n][j + n] = A[i][j];
  FactoryOutput out;
  out.datum = CartanDatum(G, h, r, DA, "small-qgroup");
  CocycleParams c(G);
  for (std::size_t i = 0; i < n; ++i) {
    c.c[i] = k[i] * N;
    require(c.c[i] >= 0 && c.c[i] < m, "c_i = k_i N must lie in [0, m)");
  }
  if (!in_gamma(out.datum, c)) throw GammaViolation("c = k N is not in Gamma for these parameters");
  out.c = c;
  for (std::size_t i = 0; i < n; ++i) out.lambda[{static_cast<int>(i), static_cast<int>(i + n)}] = lambda;
  std::ostringstream os;
  os << "small-qgroup N=" << N << " p=" << p << " l=" << l << " k=(";
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << k[i];
  os << ")";
  out.recipe = os.str();
  out.args = {{"N", N}, {"p", p}, {"l", l}, {"m", m}};
  return out;
}

namespace {

Table series_abc(char type, int n, long p, long q, long d) {
  long a, b, r;
  if (type == 'A') a = 1, b = 1, r = -3;
  else if (type == 'B') a = 2, b = 1, r = -6;
  else a = 1, b = 2, r = -4;
  long d2 = d * d, d4 = d2 * d2;
  std::vector<long> orders;
  for (int i = 1; i <= 2 * n; ++i) {
    int k = i % 4;
    orders.push_back(k == 1 ? p * d : k == 2 ? q * d : k == 3 ? p * d2 : q * d2);
  }
  Table T(orders);
  for (int i = 1; i <= n; ++i) {
    if (i % 2 == 1) T.add_h({2 * i - 1, 2 * i}, p * q);
    else if (i != n) T.add_h(range_incl(2 * i - 3, 2 * i + 2), p * q);
    else T.add_h(range_incl(2 * i - 3, 2 * i), p * q);
  }
  for (int i = 1; i <= n; ++i) {
    T.new_chi();
    if (i == 1) {
      T.set(1, d2, a), T.set(2, d2, a), T.set(3, d2, r), T.set(4, d2, r);
    } else if (i == 2) {
      T.set(1, d2, a), T.set(2, d2, a), T.set(3, d4, 1), T.set(4, d4, -2 * a * d2 - 1);
      if (n >= 3) T.set(5, d2, b), T.set(6, d2, b);
    } else if (i < n) {
      if (i % 2 == 1) {
        for (int j : {2 * i - 3, 2 * i - 2, 2 * i + 1, 2 * i + 2}) T.set(j, d2, -3 * b);
        T.set(2 * i - 1, d2, b), T.set(2 * i, d2, b);
      } else {
        for (int j : {2 * i - 3, 2 * i - 2, 2 * i + 1, 2 * i + 2}) T.set(j, d2, b);
        T.set(2 * i - 1, d4, 1), T.set(2 * i, d4, -2 * b * d2 - 1);
      }
    } else if (n % 2 == 1) {
      T.set(2 * n - 3, d2, -3 * b), T.set(2 * n - 2, d2, -3 * b);
      T.set(2 * n - 1, d2, b), T.set(2 * n, d2, b);
    } else {
      T.set(2 * n - 3, d2, b), T.set(2 * n - 2, d2, b);
      T.set(2 * n - 1, d4, 1), T.set(2 * n, d4, -1);
    }
  }
  return T;
}

Table series_d(int n, long p, long q, long d) {
  long d2 = d * d, d4 = d2 * d2;
  std::vector<long> orders;
  for (int i = 1; i <= 2 * n; ++i) {
    if (i == 1 || (i >= 3 && i % 4 == 3)) orders.push_back(p * d);
    else if (i == 2 || i % 4 == 0) orders.push_back(q * d);
    else if (i % 4 == 1) orders.push_back(p * d2);
    else orders.push_back(q * d2);
  }
  Table T(orders);
  for (int i = 1; i <= n; ++i) {
    if (i == 1 || i % 2 == 0) T.add_h({2 * i - 1, 2 * i}, p * q);
    else if (i == 3) T.add_h(range_incl(1, 8), p * q);
    else if (i != n) T.add_h(range_incl(2 * i - 3, 2 * i + 2), p * q);
    else T.add_h(range_incl(2 * n - 3, 2 * n), p * q);
  }
  for (int i = 1; i <= n; ++i) {
    T.new_chi();
    if (i == 1 || i == 2) {
      T.set(2 * i - 1, d2, 1), T.set(2 * i, d2, 1);
      T.set(5, d2, -3), T.set(6, d2, -3);
    } else if (i == 3) {
      for (int j : {1, 2, 3, 4, 7, 8}) T.set(j, d2, 1);
      T.set(5, d4, 1), T.set(6, d4, -4 * d2 - 1);
    } else if (i < n) {
      if (i % 2 == 0) {
        for (int j : {2 * i - 3, 2 * i - 2, 2 * i + 1, 2 * i + 2}) T.set(j, d2, -3);
        T.set(2 * i - 1, d2, 1), T.set(2 * i, d2, 1);
      } else {
        T.set(2 * i - 1, d4, 1), T.set(2 * i, d4, -2 * d2 - 1);
        for (int j : {2 * i - 3, 2 * i - 2, 2 * i + 1, 2 * i + 2}) T.set(j, d2, 1);
      }
    } else if (n % 2 == 0) {
      T.set(2 * n - 1, d2, 1), T.set(2 * n, d2, 1);
      T.set(2 * n - 3, d2, -3), T.set(2 * n - 2, d2, -3);
    } else {
      T.set(2 * n - 3, d2, 1), T.set(2 * n - 2, d2, 1);
      T.set(2 * n - 1, d4, 1), T.set(2 * n, d4, -1);
    }
  }
  return T;
}

Table series_e(int n, long p, long q, long d) {
  long d2 = d * d, d4 = d2 * d2;
  std::vector<long> orders;
  for (int i = 1; i <= n; ++i) {
    bool big = i == 1 || i == 3 || i == 6 || i == 8;
    orders.push_back(big ? p * d2 : p * d);
    orders.push_back(big ? q * d2 : q * d);
  }
  Table T(orders);
  // (generator, den, exponent) entries per column of the character table
  using Col = std::vector<std::tuple<int, long, long>>;
  auto z = [&](int j, long e) { return std::tuple<int, long, long>{j, d2, e}; };
  auto z4 = [&](int j, long e) { return std::tuple<int, long, long>{j, d4, e}; };
  std::map<std::string, std::pair<std::vector<int>, Col>> cols{
      {"1", {{1, 2, 3, 4}, {z4(1, 1), z4(2, -1), z(3, 1), z(4, 1)}}},
      {"2", {{3, 4}, {z(1, -3), z(2, -3), z(3, 1), z(4, 1), z(5, -3), z(6, -3)}}},
      {"3",
       {range_incl(3, 10), {z(3, 1), z(4, 1), z4(5, 1), z4(6, -4 * d2 - 1), z(7, 1), z(8, 1), z(9, 1), z(10, 1)}}},
      {"4", {{7, 8}, {z(5, -3), z(6, -3), z(7, 1), z(8, 1)}}},
      {"5", {{9, 10}, {z(5, -3), z(6, -3), z(9, 1), z(10, 1), z(11, -3), z(12, -3)}}},
      {"6", {{9, 10, 11, 12}, {z(9, 1), z(10, 1), z4(11, 1), z4(12, -1)}}},
      {"6'",
       {range_incl(9, 14), {z(9, 1), z(10, 1), z4(11, 1), z4(12, -2 * d2 - 1), z(13, 1), z(14, 1)}}},
      {"7", {{13, 14}, {z(11, -3), z(12, -3), z(13, 1), z(14, 1), z(15, -3), z(16, -3)}}},
      {"8", {{13, 14, 15, 16}, {z(13, 1), z(14, 1), z4(15, 1), z4(16, -1)}}},
  };
  std::vector<std::string> keys{"1", "2", "3", "4", "5"};
  if (n == 6) keys.push_back("6");
  else keys.insert(keys.end(), {"6'", "7"});
  if (n == 8) keys.push_back("8");
  for (auto& key : keys) {
    auto& [hs, col] = cols[key];
    T.add_h(hs, p * q);
    T.new_chi();
    for (auto& [j, den, e] : col)
      if (j <= 2 * n) T.set(j, den, e);
  }
  return T;
}

Table series_f(long p, long q, long d) {
  long d2 = d * d, d4 = d2 * d2;
  Table T({p * d, q * d, p * d2, q * d2, p * d, q * d, p * d2, q * d2});
  T.add_h({1, 2}, p * q);
  T.add_h(range_incl(1, 6), p * q);
  T.add_h({5, 6}, p * q);
  T.add_h(range_incl(5, 8), p * q);
  T.new_chi();
  T.set(1, d2, 1), T.set(2, d2, 1), T.set(3, d2, -3), T.set(4, d2, -3);
  T.new_chi();
  T.set(1, d2, 1), T.set(2, d2, 1), T.set(3, d4, 1), T.set(4, d4, -4 * d2 - 1), T.set(5, d2, 1), T.set(6, d2, 1);
  T.new_chi();
  T.set(3, d2, -6), T.set(4, d2, -6), T.set(5, d2, 2), T.set(6, d2, 2), T.set(7, d2, -6), T.set(8, d2, -6);
  T.new_chi();
  T.set(5, d2, 2), T.set(6, d2, 2), T.set(7, d4, 1), T.set(8, d4, -1);
  return T;
}

}  // namespace

std::vector<int> series_mu_support(const std::string& type, int n) {
  std::vector<int> out;
  if (type == "A" || type == "B" || type == "C") {
    for (int i = 1; i <= n; i += 2) out.push_back(i - 1);
  } else if (type == "D") {
    out.push_back(0);
    for (int i = 2; i <= n; i += 2) out.push_back(i - 1);
  } else if (type == "E6") {
    out = {1, 3, 4};
  } else if (type == "E7" || type == "E8") {
    out = {1, 3, 4, 6};
  } else if (type == "F4") {
    out = {0, 2};
  }
  return out;
}

FactoryOutput factory_series(const std::string& type, int n, long p, long q, long d) {
  require_coprime_odd({{"p", p}, {"q", q}, {"d", d}});
  Table T({});
  IntMatrix A;
  if (type == "A" || type == "B" || type == "C") {
    require(n >= 3, "n >= 3 for the A, B, C series");
    T = series_abc(type[0], n, p, q, d);
    A = diag2(n);
    for (int i = 1; i < n; ++i) link(A, i, i + 1);
    if (type == "B") link(A, 1, 2, -1, -2);
    if (type == "C") link(A, 1, 2, -2, -1);
  } else if (type == "D") {
    require(n >= 4, "n >= 4 for the D series");
    T = series_d(n, p, q, d);
    A = diag2(n);
    link(A, 1, 3);
    link(A, 2, 3);
    for (int i = 3; i < n; ++i) link(A, i, i + 1);
  } else if (type == "E6" || type == "E7" || type == "E8") {
    n = type[1] - '0';
    T = series_e(n, p, q, d);
    A = diag2(n);
    link(A, 1, 2);
    link(A, 2, 3);
    link(A, 3, 4);
    link(A, 3, 5);
    for (int i = 5; i < n; ++i) link(A, i, i + 1);
  } else if (type == "F4") {
    n = 4;
    T = series_f(p, q, d);
    A = diag2(4);
    link(A, 1, 2);
    link(A, 2, 3, -2, -1);
    link(A, 3, 4);
  } else {
    throw InvalidFactoryParams("series type must be one of A, B, C, D, E6, E7, E8, F4");
  }
  std::string label = type.size() == 1 ? type + std::to_string(n) : type;
  FactoryOutput out;
  out.datum = CartanDatum(AbGroup(T.orders), T.h, T.r, A, label);
  for (int i : series_mu_support(type, n)) {
    Root a(n, 0);
    a[i] = 1;
    out.mu[a] = CycloNumber(1);
  }
  out.c = solve_gamma(out.datum).canonical();
  out.recipe = "series type=" + type + " n=" + std::to_string(n) + " p=" + std::to_string(p) +
               " q=" + std::to_string(q) + " d=" + std::to_string(d);
  return out;
}

}  // namespace qha
