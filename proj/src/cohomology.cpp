#include "qha/cohomology.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

namespace qha {

long CocycleParams::get2(int i, int j) const {
  auto it = c2.find({i, j});
  return it == c2.end() ? 0 : it->second;
}

long CocycleParams::get3(int r, int s, int t) const {
  auto it = c3.find({r, s, t});
  return it == c3.end() ? 0 : it->second;
}

bool CocycleParams::is_zero() const {
  for (long x : c)
    if (x) return false;
  for (auto& [k, v] : c2)
    if (v) return false;
  for (auto& [k, v] : c3)
    if (v) return false;
  return true;
}

void CocycleParams::validate() const {
  const auto& m = group.orders();
  int n = static_cast<int>(m.size());
  if (static_cast<int>(c.size()) != n) throw SchemaError("cocycle: c must have one entry per generator");
  for (int l = 0; l < n; ++l)
    if (c[l] < 0 || c[l] >= m[l]) throw SchemaError("cocycle: c_" + std::to_string(l + 1) + " out of range");
  for (auto& [k, v] : c2) {
    auto [i, j] = k;
    if (i < 0 || j >= n || i >= j) throw SchemaError("cocycle: bad pair index");
    if (v < 0 || v >= gcd_l(m[i], m[j])) throw SchemaError("cocycle: c_ij out of range");
  }
  for (auto& [k, v] : c3) {
    auto [r, s, t] = k;
    if (r < 0 || t >= n || r >= s || s >= t) throw SchemaError("cocycle: bad triple index");
    if (v < 0 || v >= gcd_l(gcd_l(m[r], m[s]), m[t])) throw SchemaError("cocycle: c_rst out of range");
  }
}

std::string CocycleParams::str() const {
  std::ostringstream os;
  os << "c=(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  for (auto& [k, v] : c2)
    if (v) os << " c" << k.first + 1 << k.second + 1 << "=" << v;
  for (auto& [k, v] : c3)
    if (v) os << " c" << std::get<0>(k) + 1 << std::get<1>(k) + 1 << std::get<2>(k) + 1 << "=" << v;
  return os.str();
}

bool operator==(const CocycleParams& a, const CocycleParams& b) {
  if (a.group != b.group || a.c != b.c) return false;
  int n = static_cast<int>(a.group.rank());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (a.get2(i, j) != b.get2(i, j)) return false;
      for (int k = j + 1; k < n; ++k)
        if (a.get3(i, j, k) != b.get3(i, j, k)) return false;
    }
  return true;
}

std::vector<CocycleParams> CocycleParams::enumerate(const AbGroup& G, bool with_triples) {
  const auto& m = G.orders();
  int n = static_cast<int>(m.size());
  struct Slot {
    int kind;
    int a, b, c;
    long range;
  };
  std::vector<Slot> slots;
  for (int l = 0; l < n; ++l) slots.push_back({1, l, 0, 0, m[l]});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({2, i, j, 0, gcd_l(m[i], m[j])});
  if (with_triples)
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s)
        for (int t = s + 1; t < n; ++t) slots.push_back({3, r, s, t, gcd_l(gcd_l(m[r], m[s]), m[t])});
  std::vector<CocycleParams> out;
  std::vector<long> digit(slots.size(), 0);
  while (true) {
    CocycleParams p(G);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& s = slots[i];
      if (s.kind == 1) p.c[s.a] = digit[i];
      else if (s.kind == 2) { if (digit[i]) p.c2[{s.a, s.b}] = digit[i]; }
      else if (digit[i]) p.c3[{s.a, s.b, s.c}] = digit[i];
    }
    out.push_back(std::move(p));
    std::size_t i = slots.size();
    while (i > 0) {
      --i;
      if (++digit[i] < slots[i].range) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (slots.empty()) return out;
  }
}

Cochain3::Cochain3(AbGroup G, long M, Fn fn) : G_(std::move(G)), M_(M), fn_(std::move(fn)) {}

long Cochain3::exp(long a, long b, long c) const {
  if (table_) {
    long n = G_.order();
    return (*table_)[(a * n + b) * n + c];
  }
  return mod_l(fn_(a, b, c), M_);
}

CycloNumber Cochain3::operator()(const Elt& f, const Elt& g, const Elt& h) const {
  return CycloNumber::root(M_, exp(G_.index(f), G_.index(g), G_.index(h)));
}

Cochain3 Cochain3::tabulate(long max_entries) const {
  if (table_) return *this;
  long n = G_.order();
  if (n * n * n > max_entries) return *this;
  auto t = std::make_shared<std::vector<long>>(n * n * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c) (*t)[(a * n + b) * n + c] = mod_l(fn_(a, b, c), M_);
  Cochain3 r = *this;
  r.table_ = t;
  return r;
}

Cochain3 Cochain3::with_entry(long a, long b, long c, long e) const {
  Cochain3 base = *this;
  Fn inner = [base](long x, long y, long z) { return base.exp(x, y, z); };
  Cochain3 r(G_, M_, [inner, a, b, c, e](long x, long y, long z) {
    return (x == a && y == b && z == c) ? e : inner(x, y, z);
  });
  return r;
}

Cochain2 Cochain2::from_table(const AbGroup& G, long M, std::vector<long> table) {
  auto t = std::make_shared<std::vector<long>>(std::move(table));
  long n = G.order();
  return Cochain2(G, M, [t, n](long a, long b) { return (*t)[a * n + b]; });
}

CycloNumber Cochain2::operator()(const Elt& f, const Elt& g) const {
  return CycloNumber::root(M_, exp(G_.index(f), G_.index(g)));
}

namespace {

struct Coeffs {
  long n;
  std::vector<long> m, c, wl, c2, w2, c3, w3;
  std::vector<std::array<int, 3>> triples;
  std::vector<std::pair<int, int>> pairs;
};

Coeffs standard_coeffs(const CocycleParams& p) {
  p.validate();
  const AbGroup& G = p.group;
  long M = G.exponent();
  Coeffs k;
  k.m = G.orders();
  int n = static_cast<int>(k.m.size());
  k.n = n;
  for (int l = 0; l < n; ++l) {
    k.c.push_back(p.c[l]);
    k.wl.push_back(M / k.m[l]);
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      long v = p.get2(s, t);
      if (!v) continue;
      k.pairs.emplace_back(s, t);
      k.c2.push_back(v);
      k.w2.push_back(M / k.m[t]);
    }
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      for (int t = s + 1; t < n; ++t) {
        long v = p.get3(r, s, t);
        if (!v) continue;
        k.triples.push_back({r, s, t});
        k.c3.push_back(v);
        k.w3.push_back(M / gcd_l(gcd_l(k.m[r], k.m[s]), k.m[t]));
      }
  return k;
}

// phi exponent with (i, j, k) the exponent vectors of the three arguments
long phi_exp(const Coeffs& K, const Elt& i, const Elt& j, const Elt& k) {
  long e = 0;
  for (long l = 0; l < K.n; ++l)
    if (K.c[l]) e += K.c[l] * k[l] * ((i[l] + j[l]) / K.m[l]) * K.wl[l];
  for (std::size_t q = 0; q < K.pairs.size(); ++q) {
    auto [s, t] = K.pairs[q];
    e += K.c2[q] * k[t] * ((i[s] + j[s]) / K.m[s]) * K.w2[q];
  }
  for (std::size_t q = 0; q < K.triples.size(); ++q) {
    auto [r, s, t] = K.triples[q];
    e += K.c3[q] * i[r] * j[s] * k[t] * K.w3[q];
  }
  return e;
}

long omega_exp(const Coeffs& K, const Elt& i, const Elt& j, const Elt& k) {
  long e = 0;
  for (long l = 0; l < K.n; ++l)
    if (K.c[l]) e += K.c[l] * i[l] * ((j[l] + k[l]) / K.m[l]) * K.wl[l];
  for (std::size_t q = 0; q < K.pairs.size(); ++q) {
    auto [s, t] = K.pairs[q];
    e += K.c2[q] * i[t] * ((j[s] + k[s]) / K.m[s]) * K.w2[q];
  }
  for (std::size_t q = 0; q < K.triples.size(); ++q) {
    auto [r, s, t] = K.triples[q];
    e += K.c3[q] * k[r] * j[s] * i[t] * K.w3[q];
  }
  return e;
}

}  // namespace

Cochain3 phi(const CocycleParams& p) {
  auto K = std::make_shared<Coeffs>(standard_coeffs(p));
  auto elts = std::make_shared<std::vector<Elt>>(p.group.elements());
  Cochain3 r(p.group, p.group.exponent(), [K, elts](long a, long b, long c) {
    return phi_exp(*K, (*elts)[a], (*elts)[b], (*elts)[c]);
  });
  r.params = p;
  return r;
}

Cochain3 omega(const CocycleParams& p) {
  auto K = std::make_shared<Coeffs>(standard_coeffs(p));
  auto elts = std::make_shared<std::vector<Elt>>(p.group.elements());
  return Cochain3(p.group, p.group.exponent(), [K, elts](long a, long b, long c) {
    return omega_exp(*K, (*elts)[a], (*elts)[b], (*elts)[c]);
  });
}

Cochain3 sigma(const Cochain3& f) {
  Cochain3 base = f;
  return Cochain3(f.group(), f.conductor(), [base](long a, long b, long c) { return base.exp(c, b, a); });
}

Cochain3 coboundary(const Cochain2& J) {
  Cochain2 base = J;
  AbGroup G = J.group();
  return Cochain3(G, J.conductor(), [base, G](long f, long g, long h) {
    return base.exp(g, h) + base.exp(f, G.add_idx(g, h)) - base.exp(f, g) - base.exp(G.add_idx(f, g), h);
  });
}

Cochain3 cochain3_from_values(const AbGroup& G, const std::vector<CycloNumber>& values) {
  long n = G.order();
  if (static_cast<long>(values.size()) != n * n * n) throw GroupMismatch("cochain table has wrong size");
  long M = 1;
  for (auto& v : values) M = lcm_l(M, v.conductor());
  std::vector<long> t(values.size());
  // -zeta_M is a 2M-th root of unity when M is odd
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto e = values[i].embed(M).root_exponent();
    if (!e && M % 2) {
      M *= 2;
      for (std::size_t k = 0; k < i; ++k) t[k] *= 2;
      e = values[i].embed(M).root_exponent();
    }
    if (!e) throw NotRootOfUnityValued("cochain value " + values[i].str() + " is not a root of unity");
    t[i] = *e;
  }
  auto tab = std::make_shared<std::vector<long>>(std::move(t));
  return Cochain3(G, M, [tab, n](long a, long b, long c) { return (*tab)[(a * n + b) * n + c]; }).tabulate();
}

bool is_normalized(const Cochain3& f) {
  long n = f.group().order();
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      if (f.exp(a, 0, b) != 0) return false;
  return true;
}

bool is_3cocycle(const Cochain3& f0, long max_order) {
  const AbGroup& G = f0.group();
  long n = G.order();
  if (n > max_order) throw BudgetExceeded("is_3cocycle: |G| = " + std::to_string(n) + " exceeds " + std::to_string(max_order));
  Cochain3 f = f0.tabulate();
  if (!is_normalized(f)) return false;
  long M = f.conductor();
  std::vector<long> T(n * n * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c) T[(a * n + b) * n + c] = f.exp(a, b, c);
  std::vector<long> add(n * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) add[a * n + b] = G.add_idx(a, b);
  auto at = [&](long a, long b, long c) { return T[(a * n + b) * n + c]; };
  for (long e = 0; e < n; ++e)
    for (long g1 = 0; g1 < n; ++g1) {
      long ef = add[e * n + g1];
      for (long g = 0; g < n; ++g) {
        long fg = add[g1 * n + g];
        long efg = at(e, g1, g);
        for (long h = 0; h < n; ++h) {
          long gh = add[g * n + h];
          long lhs = at(ef, g, h) + at(e, g1, gh);
          long rhs = efg + at(e, fg, h) + at(g1, g, h);
          if ((lhs - rhs) % M) return false;
        }
      }
    }
  return true;
}

namespace {

// unknown index of J(f, g) for f, g != identity
inline long unk(long f, long g, long n) { return (f - 1) * (n - 1) + (g - 1); }

// Reduce the coboundary system with the given right-hand sides modulo p^k.
HowellReducer reduce_system(const AbGroup& G, long p, int k, const std::vector<const Cochain3*>& rhs) {
  long n = G.order();
  std::size_t nu = static_cast<std::size_t>((n - 1) * (n - 1));
  HowellReducer H(p, k, nu, rhs.size());
  long mod = H.modulus();
  for (long f = 0; f < n; ++f)
    for (long g = 0; g < n; ++g)
      for (long h = 0; h < n; ++h) {
        std::vector<long> row(nu + rhs.size(), 0);
        auto put = [&](long a, long b, long s) {
          if (a != 0 && b != 0) row[unk(a, b, n)] += s;
        };
        put(g, h, 1);
        put(f, G.add_idx(g, h), 1);
        put(f, g, -1);
        put(G.add_idx(f, g), h, -1);
        bool nz = false;
        for (std::size_t j = 0; j < rhs.size(); ++j) {
          const Cochain3& c = *rhs[j];
          row[nu + j] = mod_l(c.exp(f, g, h), mod);
          nz |= row[nu + j] != 0;
        }
        for (std::size_t j = 0; j < nu && !nz; ++j) nz = row[j] != 0;
        if (nz) H.add_row(std::move(row));
      }
  return H;
}

}  // namespace

CoboundaryResult is_coboundary(const Cochain3& f, bool allow_fast_path, long max_order) {
  CoboundaryResult res;
  const AbGroup& G = f.group();
  if (allow_fast_path && f.params) {
    res.method = "fast-path";
    res.coboundary = f.params->is_zero();
    if (res.coboundary) res.witness = Cochain2(G, 1, [](long, long) { return 0L; });
    return res;
  }
  long n = G.order();
  if (n > max_order) throw BudgetExceeded("is_coboundary: |G| = " + std::to_string(n) + " exceeds " + std::to_string(max_order));
  res.method = "smith";
  long M = f.conductor();
  Cochain3 ft = f.tabulate();
  std::size_t nu = static_cast<std::size_t>((n - 1) * (n - 1));
  std::vector<Progression> sol(nu, Progression{0, 1});
  for (auto [p, k] : prime_powers(M)) {
    HowellReducer H = reduce_system(G, p, k, {&ft});
    for (auto& c : H.constraints())
      if (c[0] != 0) return res;
    std::vector<std::vector<long>> A;
    std::vector<long> b;
    for (auto& r : H.pivot_rows()) {
      A.emplace_back(r.begin(), r.begin() + static_cast<long>(nu));
      b.push_back(r[nu]);
    }
    auto x = smith_solve(A, b, nu, H.modulus());
    if (!x) throw std::logic_error("reduced coboundary system inconsistent after passing constraints");
    for (std::size_t i = 0; i < nu; ++i) sol[i] = *crt_merge(sol[i], Progression{(*x)[i], H.modulus()});
  }
  std::vector<long> table(n * n, 0);
  for (long a = 1; a < n; ++a)
    for (long b = 1; b < n; ++b) table[a * n + b] = mod_l(sol[unk(a, b, n)].base, M);
  Cochain2 J = Cochain2::from_table(G, M, std::move(table));
  Cochain3 dJ = coboundary(J);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        if (mod_l(dJ.exp(a, b, c) - ft.exp(a, b, c), M) != 0)
          throw std::logic_error("coboundary witness failed verification");
  res.coboundary = true;
  res.witness = J;
  return res;
}

CoboundaryDecider::CoboundaryDecider(const AbGroup& G, long max_order) : G_(G) {
  long n = G.order();
  if (n > max_order) throw BudgetExceeded("CoboundaryDecider: |G| = " + std::to_string(n) + " exceeds " + std::to_string(max_order));
  const auto& m = G.orders();
  int r = static_cast<int>(m.size());
  for (int l = 0; l < r; ++l)
    if (m[l] > 1) {
      CocycleParams p(G);
      p.c[l] = 1;
      basis_.push_back(p);
    }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (gcd_l(m[i], m[j]) > 1) {
        CocycleParams p(G);
        p.c2[{i, j}] = 1;
        basis_.push_back(p);
      }
      for (int k = j + 1; k < r; ++k)
        if (gcd_l(gcd_l(m[i], m[j]), m[k]) > 1) {
          CocycleParams p(G);
          p.c3[{i, j, k}] = 1;
          basis_.push_back(p);
        }
    }
  std::vector<Cochain3> cols;
  for (auto& b : basis_) cols.push_back(phi(b).tabulate());
  std::vector<const Cochain3*> ptrs;
  for (auto& c : cols) ptrs.push_back(&c);
  for (auto [p, k] : prime_powers(G.exponent())) {
    HowellReducer H = reduce_system(G, p, k, ptrs);
    constraints_.emplace_back(H.modulus(), H.constraints());
  }
}

std::vector<long> CoboundaryDecider::coords(const CocycleParams& c) const {
  std::vector<long> x;
  for (auto& b : basis_) {
    if (b.c != std::vector<long>(b.c.size(), 0)) {
      for (std::size_t l = 0; l < b.c.size(); ++l)
        if (b.c[l]) x.push_back(c.c[l]);
    } else if (!b.c2.empty()) {
      auto key = b.c2.begin()->first;
      x.push_back(c.get2(key.first, key.second));
    } else {
      auto key = b.c3.begin()->first;
      x.push_back(c.get3(std::get<0>(key), std::get<1>(key), std::get<2>(key)));
    }
  }
  return x;
}

bool CoboundaryDecider::is_coboundary(const CocycleParams& c) const {
  if (c.group != G_) throw GroupMismatch("parameters over a different group");
  c.validate();
  std::vector<long> x = coords(c);
  for (auto& [mod, rows] : constraints_)
    for (auto& row : rows) {
      long s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s = (s + row[j] * x[j]) % mod;
      if (s) return false;
    }
  return true;
}

bool is_abelian(const CocycleParams& c) {
  for (auto& [k, v] : c.c3)
    if (v) return false;
  return true;
}

long jc_conductor(const AbGroup& G) {
  const auto& m = G.orders();
  long L = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    L = lcm_l(L, m[i] * m[i]);
    for (std::size_t j = i + 1; j < m.size(); ++j) L = lcm_l(L, m[i] * m[j]);
  }
  return L;
}

long jc_exp(const CocycleParams& c, const Elt& f, const Elt& g) {
  if (!is_abelian(c)) throw NonAbelianParams("J_c needs c_rst = 0");
  const auto& m = c.group.orders();
  std::size_t n = m.size();
  if (f.size() != n || g.size() != n) throw GroupMismatch("J_c arguments must lie in the doubled group");
  long L = jc_conductor(c.group);
  long e = 0;
  std::vector<long> defect(n), y(n);
  for (std::size_t l = 0; l < n; ++l) {
    long mm = m[l] * m[l];
    long x = mod_l(f[l], mm);
    y[l] = mod_l(g[l], mm);
    defect[l] = reduce_with_defect(x, m[l]).second;
    e += c.c[l] * y[l] * defect[l] % L * (L / mm);
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      long v = c.get2(static_cast<int>(s), static_cast<int>(t));
      if (v) e += v * y[t] * defect[s] % L * (L / (m[s] * m[t]));
    }
  return mod_l(e, L);
}

CycloNumber jc_cochain(const CocycleParams& c, const Elt& f, const Elt& g) {
  return CycloNumber::root(jc_conductor(c.group), jc_exp(c, f, g));
}

}  // namespace qha
