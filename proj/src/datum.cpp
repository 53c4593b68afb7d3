#include "qha/datum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qha/errors.hpp"

namespace qha {

namespace {

std::string vec_str(const std::vector<long>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

std::string idx2(std::size_t i, std::size_t j) { return idx(i) + "," + idx(j); }

bool is_zero_row(const std::vector<long>& row, const AbGroup& big) {
  for (std::size_t k = 0; k < row.size(); ++k)
    if (mod_l(row[k], big.orders()[k]) != 0) return false;
  return true;
}

}  // namespace

CartanDatum::CartanDatum(const AbGroup& G, std::vector<Elt> h_, IntMatrix r_, IntMatrix A_, std::string label_)
    : base(G), big(DoubledGroup(G).big), h(std::move(h_)), r(std::move(r_)), A(std::move(A_)), label(std::move(label_)) {}

long root_order(long e, long L) {
  e = mod_l(e, L);
  return L / std::gcd(e == 0 ? L : e, L);
}

long CartanDatum::chi_row_exp(const std::vector<long>& row, const Elt& x) const {
  long L = conductor();
  __int128 acc = 0;
  for (std::size_t k = 0; k < row.size() && k < x.size(); ++k) {
    long M = big.orders()[k];
    acc += static_cast<__int128>(mod_l(row[k], M)) * mod_l(x[k], M) % M * (L / M);
    acc %= L;
  }
  return static_cast<long>(acc);
}

long CartanDatum::chi_exp(std::size_t i, const Elt& x) const { return chi_row_exp(r[i], x); }

CycloNumber CartanDatum::q(std::size_t i, std::size_t j) const { return CycloNumber::root(conductor(), q_exp(i, j)); }

long CartanDatum::q_order(std::size_t i, std::size_t j) const { return root_order(q_exp(i, j), conductor()); }

Elt CartanDatum::h_root(const Root& a) const {
  Elt x = big.identity();
  for (std::size_t i = 0; i < a.size() && i < h.size(); ++i) x = big.add(x, big.scale(h[i], a[i]));
  return x;
}

std::vector<long> CartanDatum::chi_root(const Root& a) const {
  std::vector<long> row(big.rank(), 0);
  for (std::size_t i = 0; i < a.size() && i < r.size(); ++i)
    for (std::size_t k = 0; k < row.size(); ++k)
      row[k] = mod_l(row[k] + static_cast<long>(static_cast<__int128>(a[i]) * r[i][k] % big.orders()[k]),
                     big.orders()[k]);
  return row;
}

bool CartanDatum::in_G(const Elt& x) const {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (mod_l(x[k], base.orders()[k]) != 0) return false;
  return true;
}

DatumReport validate_datum(const CartanDatum& D) {
  DatumReport rep;
  std::size_t th = D.theta(), n = D.base.rank();
  bool shape = D.A.size() == th && D.r.size() == th && D.big.rank() == n;
  std::string why;
  for (std::size_t i = 0; shape && i < th; ++i) {
    if (D.h[i].size() != n) why = "h_" + idx(i) + " has " + std::to_string(D.h[i].size()) + " exponents";
    else if (D.r[i].size() != n) why = "chi_" + idx(i) + " has " + std::to_string(D.r[i].size()) + " exponents";
    else if (D.A[i].size() != th) why = "Cartan matrix row " + idx(i) + " has wrong length";
    shape = why.empty();
  }
  if (why.empty() && !shape) why = "theta mismatch between h, chi and the Cartan matrix";
  rep.add("shape", shape, why);
  if (!shape) return rep;

  std::string range_fail;
  for (std::size_t i = 0; i < th && range_fail.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long M = D.big.orders()[j];
      if (D.h[i][j] < 0 || D.h[i][j] >= M) {
        range_fail = "s_" + idx2(i, j) + " = " + std::to_string(D.h[i][j]) + " outside [0," + std::to_string(M) + ")";
        break;
      }
      if (D.r[i][j] < 0 || D.r[i][j] >= M) {
        range_fail = "r_" + idx2(i, j) + " = " + std::to_string(D.r[i][j]) + " outside [0," + std::to_string(M) + ")";
        break;
      }
    }
  rep.add("exponent ranges", range_fail.empty(), range_fail);

  std::vector<DynkinComponent> comps;
  try {
    comps = classify(D.A);
  } catch (const Error& e) {
    rep.add("Cartan matrix of finite type", false, e.what());
    return rep;
  }
  std::string types;
  for (auto& c : comps) types += (types.empty() ? "" : " x ") + c.type;
  rep.add("Cartan matrix of finite type", true, types);

  long L = D.conductor();
  std::string braid_fail;
  for (std::size_t i = 0; i < th && braid_fail.empty(); ++i)
    for (std::size_t j = 0; j < th; ++j) {
      if (i == j) continue;
      long lhs = mod_l(D.q_exp(i, j) + D.q_exp(j, i), L);
      long rhs = mod_l(static_cast<long>(static_cast<__int128>(D.A[i][j]) * D.q_exp(i, i) % L), L);
      if (lhs != rhs) {
        braid_fail = "q_" + idx2(i, j) + " q_" + idx2(j, i) + " = zeta_" + std::to_string(L) + "^" +
                     std::to_string(lhs) + " but q_" + idx2(i, i) + "^a_" + idx2(i, j) + " = zeta_" +
                     std::to_string(L) + "^" + std::to_string(rhs);
        break;
      }
    }
  rep.add("q_ij q_ji = q_ii^a_ij", braid_fail.empty(), braid_fail);

  std::vector<long> d = symmetrizer(D.A);
  bool odd_ok = true, eq_ok = true, g2_ok = true, q_ok = true;
  std::string odd_d, eq_d, g2_d, q_d;
  for (auto& c : comps) {
    ComponentInfo info;
    info.comp = c;
    info.N = D.q_order(c.vertices[0], c.vertices[0]);
    for (int v : c.vertices) {
      info.d.push_back(d[v]);
      long N = D.q_order(v, v);
      if (N == 1 || N % 2 == 0) {
        if (odd_ok) odd_d = "q_" + idx2(v, v) + " has order " + std::to_string(N);
        odd_ok = false;
      }
      if (N != info.N) {
        if (eq_ok)
          eq_d = "in " + c.type + ": q_" + idx2(v, v) + " has order " + std::to_string(N) + ", q_" +
                 idx2(c.vertices[0], c.vertices[0]) + " has order " + std::to_string(info.N);
        eq_ok = false;
      }
    }
    if (c.series == 'G' && info.N % 3 == 0) {
      g2_ok = false;
      g2_d = "G2 component with N = " + std::to_string(info.N);
    }
    std::optional<Progression> sol = Progression{0, 1};
    for (int v : c.vertices) {
      if (!sol) break;
      auto p = solve_linear_congruence(mod_l(2 * d[v], L), D.q_exp(v, v), L);
      sol = p ? crt_merge(*sol, *p) : std::nullopt;
    }
    if (sol) {
      // prefer a q of odd order
      long best = sol->base;
      for (long e = sol->base, steps = 0; e < L && steps < 1000000; e += sol->step, ++steps)
        if (root_order(e, L) % 2 == 1) {
          best = e;
          break;
        }
      info.q_exp = best;
    } else {
      q_ok = false;
      if (q_d.empty()) q_d = "no q with q_ii = q^(2 d_i) on component " + c.type;
    }
    rep.components.push_back(info);
  }
  rep.add("q_ii of odd order != 1", odd_ok, odd_d);
  rep.add("equal order on each component", eq_ok, eq_d);
  rep.add("order prime to 3 on G2 components", g2_ok, g2_d);
  rep.add("q_ii = q^(2 d_i)", q_ok, q_d);
  rep.notes.push_back("root vector exponents range over 0..N_J-1");
  return rep;
}

long component_order(const CartanDatum& D, std::size_t i) {
  for (auto& c : classify(D.A))
    if (std::find(c.vertices.begin(), c.vertices.end(), static_cast<int>(i)) != c.vertices.end())
      return D.q_order(c.vertices[0], c.vertices[0]);
  throw NotCartan("vertex out of range");
}

// Gamma(D)

std::vector<Congruence> gamma_conditions(const CartanDatum& D) {
  std::vector<Congruence> out;
  const auto& m = D.base.orders();
  std::size_t n = m.size();
  auto push = [&](std::string var, long a, long b, long mod, std::string origin) {
    a = mod_l(a, mod);
    b = mod_l(b, mod);
    long g = std::gcd(a == 0 ? mod : a, mod);
    if (b % g == 0) {
      a /= g;
      b /= g;
      mod /= g;
    }
    out.push_back({std::move(var), a % mod, b % mod, mod, std::move(origin)});
  };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < D.theta(); ++i)
      push("c_" + idx(j), D.r[i][j], D.h[i][j], m[j], "s_" + idx2(i, j) + " = c_" + idx(j) + " r_" + idx2(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::string var = "c_" + idx2(i, j);
      for (std::size_t l = 0; l < D.theta(); ++l)
        push(var, D.r[l][j], 0, m[j], var + " r_" + idx2(l, j) + " = 0");
      push(var, m[i], 0, m[j], var + " m_" + idx(i) + " = 0");
    }
  return out;
}

bool GammaVar::contains(long x) const {
  if (empty() || x < 0 || x >= range) return false;
  return mod_l(x - sol->base, sol->step) == 0;
}

std::optional<long> GammaVar::smallest() const {
  if (empty()) return std::nullopt;
  return sol->base;
}

std::optional<long> GammaVar::smallest_nonzero() const {
  if (empty()) return std::nullopt;
  long x = sol->base == 0 ? sol->step : sol->base;
  if (x >= range) return std::nullopt;
  return x;
}

long GammaVar::count() const {
  if (empty()) return 0;
  return (range - 1 - sol->base) / sol->step + 1;
}

std::string GammaVar::str() const {
  if (empty()) return "{}";
  std::ostringstream os;
  if (count() <= 8) {
    os << "{";
    for (long x = sol->base, k = 0; x < range; x += sol->step, ++k) os << (k ? "," : "") << x;
    os << "}";
  } else {
    os << "{" << sol->base << " + " << sol->step << "k < " << range << "}";
  }
  return os.str();
}

bool GammaSet::empty() const {
  for (auto& v : c)
    if (v.empty()) return true;
  for (auto& [k, v] : c2)
    if (v.empty()) return true;
  return false;
}

bool GammaSet::contains(const CocycleParams& p) const {
  if (p.group != group || p.c.size() != c.size()) return false;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!c[j].contains(p.c[j])) return false;
  for (auto& [k, v] : c2)
    if (!v.contains(p.get2(k.first, k.second))) return false;
  for (auto& [k, v] : p.c2)
    if (v != 0 && !c2.count(k)) return false;
  for (auto& [k, v] : p.c3)
    if (v != 0) return false;
  return true;
}

bool GammaSet::all_c_nonzero() const {
  if (empty()) return false;
  for (auto& v : c)
    if (v.has_zero()) return false;
  return true;
}

std::optional<CocycleParams> GammaSet::canonical() const {
  if (empty()) return std::nullopt;
  CocycleParams p(group);
  bool nonzero = false;
  for (std::size_t j = 0; j < c.size(); ++j) {
    p.c[j] = *c[j].smallest();
    nonzero |= p.c[j] != 0;
  }
  for (auto& [k, v] : c2) {
    long x = *v.smallest();
    if (x != 0) p.c2[k] = x;
    nonzero |= x != 0;
  }
  if (nonzero) return p;
  // every minimum is zero: bump the last variable that admits a nonzero value
  for (auto it = c2.rbegin(); it != c2.rend(); ++it)
    if (auto x = it->second.smallest_nonzero()) {
      p.c2[it->first] = *x;
      return p;
    }
  for (std::size_t j = c.size(); j-- > 0;)
    if (auto x = c[j].smallest_nonzero()) {
      p.c[j] = *x;
      return p;
    }
  return std::nullopt;
}

mpz_class GammaSet::size() const {
  mpz_class s = 1;
  for (auto& v : c) s *= v.count();
  for (auto& [k, v] : c2) s *= v.count();
  return s;
}

std::string GammaSet::str() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << "c_" << j + 1 << "=" << c[j].str();
  for (auto& [k, v] : c2)
    if (!(v.count() == 1 && v.has_zero())) os << " c_" << k.first + 1 << "," << k.second + 1 << "=" << v.str();
  return os.str();
}

GammaSet solve_gamma(const CartanDatum& D) {
  GammaSet S;
  S.group = D.base;
  const auto& m = D.base.orders();
  std::size_t n = m.size();
  std::map<std::string, std::optional<Progression>> sol;
  for (auto& cg : gamma_conditions(D)) {
    auto it = sol.find(cg.var);
    std::optional<Progression> cur = it == sol.end() ? std::optional<Progression>(Progression{0, 1}) : it->second;
    if (cur) {
      auto p = solve_linear_congruence(cg.a, cg.b, cg.n);
      cur = p ? crt_merge(*cur, *p) : std::nullopt;
    }
    sol[cg.var] = cur;
  }
  auto get = [&](const std::string& var) {
    auto it = sol.find(var);
    return it == sol.end() ? std::optional<Progression>(Progression{0, 1}) : it->second;
  };
  for (std::size_t j = 0; j < n; ++j) S.c.push_back({get("c_" + idx(j)), m[j]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      S.c2[{static_cast<int>(i), static_cast<int>(j)}] = {get("c_" + idx2(i, j)), std::gcd(m[i], m[j])};
  return S;
}

bool in_gamma(const CartanDatum& D, const CocycleParams& p) {
  const auto& m = D.base.orders();
  std::size_t n = m.size();
  if (p.group != D.base || p.c.size() != n) return false;
  for (auto& [k, v] : p.c3)
    if (v != 0) return false;
  for (std::size_t j = 0; j < n; ++j) {
    long cj = p.c[j];
    if (cj < 0 || cj >= m[j]) return false;
    for (std::size_t i = 0; i < D.theta(); ++i)
      if (mod_l(D.h[i][j] - static_cast<long>(static_cast<__int128>(cj) * D.r[i][j] % m[j]), m[j]) != 0) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long cij = p.get2(static_cast<int>(i), static_cast<int>(j));
      if (cij < 0 || cij >= std::gcd(m[i], m[j])) return false;
      if (static_cast<__int128>(cij) * m[i] % m[j] != 0) return false;
      for (std::size_t l = 0; l < D.theta(); ++l)
        if (static_cast<__int128>(cij) * D.r[l][j] % m[j] != 0) return false;
    }
  return true;
}

// linking and root vector parameters

Report validate_linking(const CartanDatum& D, const Linking& lambda) {
  Report rep;
  std::vector<int> comp_of(D.theta(), -1);
  auto comps = classify(D.A);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c].vertices) comp_of[v] = static_cast<int>(c);
  for (auto& [k, val] : lambda) {
    if (val.is_zero()) continue;
    auto [i, j] = k;
    std::string name = "lambda_" + idx2(i, j);
    if (i < 0 || j < 0 || i >= j || j >= static_cast<int>(D.theta())) {
      rep.add(name + " index", false, "linking parameters need 1 <= i < j <= theta");
      continue;
    }
    if (comp_of[i] == comp_of[j]) {
      rep.add(name + ": i and j in different components", false, "vertices " + idx2(i, j) + " are connected");
      continue;
    }
    Elt hh = D.big.add(D.h[i], D.h[j]);
    std::vector<long> chi(D.big.rank());
    for (std::size_t t = 0; t < chi.size(); ++t) chi[t] = D.r[i][t] + D.r[j][t];
    bool trivial = hh == D.big.identity();
    bool eps = is_zero_row(chi, D.big);
    rep.add(name + ": h_i h_j != 1 and chi_i chi_j = eps", !trivial && eps,
            trivial ? "h_i h_j = 1" : (eps ? "" : "chi_i chi_j != eps"));
    rep.add(name + ": h_i h_j in G", D.in_G(hh), D.in_G(hh) ? "" : "h_i h_j = " + vec_str(hh) + " not in G");
  }
  if (rep.checks.empty()) rep.add("linking parameters", true, "all zero");
  return rep;
}

Report validate_rootparams(const CartanDatum& D, const RootParams& mu) {
  Report rep;
  RootSystem R = root_system(D.A);
  for (auto& [alpha, val] : mu) {
    if (val.is_zero()) continue;
    std::string name = "mu_" + vec_str(alpha);
    auto it = std::find(R.positive.begin(), R.positive.end(), alpha);
    if (it == R.positive.end()) {
      rep.add(name + " is a positive root", false, vec_str(alpha) + " is not a positive root");
      continue;
    }
    const auto& comp = R.components[R.component_of_root[it - R.positive.begin()]];
    long N = D.q_order(comp.vertices[0], comp.vertices[0]);
    Elt hN = D.big.scale(D.h_root(alpha), N);
    bool trivial = hN == D.big.identity();
    std::vector<long> chiN = D.chi_root(alpha);
    for (std::size_t k = 0; k < chiN.size(); ++k)
      chiN[k] = static_cast<long>(static_cast<__int128>(chiN[k]) * N % D.big.orders()[k]);
    bool eps = is_zero_row(chiN, D.big);
    rep.add(name + ": h^N != 1 and chi^N = eps", !trivial && eps,
            trivial ? "h_alpha^N = 1" : (eps ? "" : "chi_alpha^N != eps"));
    rep.add(name + ": h^N in G", D.in_G(hN), D.in_G(hN) ? "" : "h_alpha^N = " + vec_str(hN) + " not in G");
    rep.add(name + " at a simple root", height(alpha) == 1,
            height(alpha) == 1 ? "" : "nonzero mu at a non-simple root needs the general recursion");
  }
  if (rep.checks.empty()) rep.add("root vector parameters", true, "all zero");
  return rep;
}

std::vector<int> admissible_mu_support(const CartanDatum& D) {
  std::vector<int> out;
  for (std::size_t i = 0; i < D.theta(); ++i) {
    Root a(D.theta(), 0);
    a[i] = 1;
    if (validate_rootparams(D, {{a, CycloNumber(1)}}).ok()) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::pair<Elt, CycloNumber>> u_alpha_terms(const CartanDatum& D, const RootParams& mu, const Root& alpha) {
  auto it = mu.find(alpha);
  if (it == mu.end() || it->second.is_zero()) return {};
  if (height(alpha) != 1)
    throw UnsupportedRecursion("mu_" + vec_str(alpha) + " is nonzero at a non-simple root");
  std::size_t i = std::find(alpha.begin(), alpha.end(), 1) - alpha.begin();
  long N = component_order(D, i);
  Elt g = D.doubled().iota_inv(D.big.scale(D.h[i], N));
  if (g == D.base.identity()) return {};
  return {{D.base.identity(), it->second}, {g, -it->second}};
}

GroupAlgebraElt u_alpha(const CartanDatum& D, const RootParams& mu, const Root& alpha) {
  GroupAlgebraElt u(D.base);
  for (auto& [g, c] : u_alpha_terms(D, mu, alpha)) u += GroupAlgebraElt::basis(D.base, g, c);
  return u;
}

mpz_class dimension(const CartanDatum& D) {
  mpz_class dim = D.base.order_exact();
  if (D.theta() == 0) return dim;
  RootSystem R = root_system(D.A);
  for (std::size_t l = 0; l < R.positive.size(); ++l) {
    const auto& comp = R.components[R.component_of_root[l]];
    dim *= D.q_order(comp.vertices[0], comp.vertices[0]);
  }
  return dim;
}

}  // namespace qha
