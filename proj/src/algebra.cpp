#include "qha/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "qha/errors.hpp"

namespace qha {

// sparse containers

void AlgElt::add(long b, const CycloNumber& x) {
  if (x.is_zero()) return;
  auto [it, fresh] = c.emplace(b, x);
  if (fresh) return;
  it->second += x;
  if (it->second.is_zero()) c.erase(it);
}

AlgElt& AlgElt::operator+=(const AlgElt& o) {
  for (auto& [b, x] : o.c) add(b, x);
  return *this;
}

AlgElt& AlgElt::operator-=(const AlgElt& o) {
  for (auto& [b, x] : o.c) add(b, -x);
  return *this;
}

AlgElt operator*(const CycloNumber& s, const AlgElt& a) {
  AlgElt r;
  if (s.is_zero()) return r;
  for (auto& [b, x] : a.c) r.c.emplace(b, s * x);
  return r;
}

bool operator==(const AlgElt& a, const AlgElt& b) { return a.c.size() == b.c.size() && (a - b).is_zero(); }

void TensorElt::add(const std::vector<long>& key, const CycloNumber& x) {
  if (x.is_zero()) return;
  auto [it, fresh] = c.emplace(key, x);
  if (fresh) return;
  it->second += x;
  if (it->second.is_zero()) c.erase(it);
}

TensorElt& TensorElt::operator+=(const TensorElt& o) {
  for (auto& [k, x] : o.c) add(k, x);
  return *this;
}

TensorElt& TensorElt::operator-=(const TensorElt& o) {
  for (auto& [k, x] : o.c) add(k, -x);
  return *this;
}

TensorElt operator*(const CycloNumber& s, const TensorElt& a) {
  TensorElt r(a.rank);
  if (s.is_zero()) return r;
  for (auto& [k, x] : a.c) r.c.emplace(k, s * x);
  return r;
}

bool operator==(const TensorElt& a, const TensorElt& b) {
  if (a.c.size() != b.c.size()) return false;
  TensorElt d = a;
  d -= b;
  return d.is_zero();
}

std::string Relation::str() const {
  std::ostringstream os;
  if (kind == Kind::Commutation) {
    os << "g" << gen << " X" << letter << " g" << gen << "^-1 = zeta^" << exp << " X" << letter;
    return os.str();
  }
  os << poly_str(xs);
  for (auto& [g, x] : gs) {
    os << " + (" << x.str() << ")*g[";
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << "]";
  }
  os << " = 0";
  return os.str();
}

// free polynomials in the letters

long braid_exp(const CartanDatum& D, const Root& a, const Root& b) {
  long L = D.conductor(), e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) e = mod_l(e + a[i] * b[j] % L * D.q_exp(i, j), L);
  }
  return e;
}

Poly braided_commutator(const CartanDatum& D, const Poly& a, const Root& da, const Poly& b, const Root& db) {
  Poly r = poly_mul(a, b);
  poly_axpy(r, -CycloNumber::root(D.conductor(), braid_exp(D, da, db)), poly_mul(b, a));
  return r;
}

namespace {

Poly letter(int i) { return Poly{{Word(1, static_cast<char>(i)), CycloNumber(1)}}; }

Root unit(std::size_t n, std::size_t i) {
  Root r(n, 0);
  r[i] = 1;
  return r;
}

Poly root_vector_in(const RootSystem& R, long L, const BraidFn& braid, std::size_t p, std::map<std::size_t, Poly>& memo) {
  if (auto it = memo.find(p); it != memo.end()) return it->second;
  const Root& beta = R.positive[p];
  if (height(beta) == 1) {
    std::size_t i = std::find(beta.begin(), beta.end(), 1) - beta.begin();
    return memo[p] = letter(static_cast<int>(i));
  }
  const auto& comp = R.components[R.component_of_root[p]];
  if (comp.series != 'A' && comp.rank > 2)
    throw UnsupportedType("root vectors of non-simple roots are only built for A_n and rank-2 components, not " +
                          comp.type);
  for (std::size_t a = 0; a < p; ++a) {
    Root g = beta;
    bool pos = true;
    for (std::size_t k = 0; k < g.size(); ++k) pos &= (g[k] -= R.positive[a][k]) >= 0;
    if (!pos) continue;
    auto it = std::find(R.positive.begin() + p + 1, R.positive.end(), g);
    if (it == R.positive.end()) continue;
    std::size_t b = it - R.positive.begin();
    Poly x = poly_mul(root_vector_in(R, L, braid, a, memo), root_vector_in(R, L, braid, b, memo));
    Poly y = poly_mul(root_vector_in(R, L, braid, b, memo), root_vector_in(R, L, braid, a, memo));
    poly_axpy(x, -CycloNumber::root(L, braid(R.positive[a], g)), y);
    return memo[p] = x;
  }
  throw UnsupportedType("no convex splitting for a positive root");
}

}  // namespace

Poly root_vector(const IntMatrix& A, long L, const BraidFn& braid, const Root& beta) {
  RootSystem R = root_system(A);
  auto it = std::find(R.positive.begin(), R.positive.end(), beta);
  if (it == R.positive.end()) throw NotCartan("not a positive root");
  std::map<std::size_t, Poly> memo;
  return root_vector_in(R, L, braid, it - R.positive.begin(), memo);
}

Poly root_vector(const CartanDatum& D, const Root& beta) {
  return root_vector(D.A, D.conductor(), [&D](const Root& a, const Root& b) { return braid_exp(D, a, b); }, beta);
}

long top_degree(const CartanDatum& D) {
  if (D.theta() == 0) return 0;
  RootSystem R = root_system(D.A);
  long t = 0;
  for (std::size_t l = 0; l < R.positive.size(); ++l) {
    int v = R.components[R.component_of_root[l]].vertices[0];
    t += (D.q_order(v, v) - 1) * height(R.positive[l]);
  }
  return t;
}

long resolve_budget(long explicit_budget) {
  if (explicit_budget > 0) return explicit_budget;
  if (const char* env = std::getenv("QHA_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 5000;
}

std::vector<Relation> defining_relations(const CartanDatum& D, const Linking& lambda, const RootParams& mu) {
  std::size_t th = D.theta(), n = D.base.rank();
  std::vector<Relation> out;
  for (std::size_t i = 0; i < th; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Relation r;
      r.kind = Relation::Kind::Commutation;
      r.name = "g" + std::to_string(j) + " X" + std::to_string(i) + " g" + std::to_string(j) + "^-1";
      r.letter = static_cast<int>(i);
      r.gen = static_cast<int>(j);
      r.exp = mod_l(D.r[i][j], D.base.orders()[j]);
      out.push_back(r);
    }
  if (th == 0) return out;

  std::vector<DynkinComponent> comps = classify(D.A);
  std::vector<int> comp_of(th, -1);
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (int v : comps[k].vertices) comp_of[v] = static_cast<int>(k);

  for (std::size_t i = 0; i < th; ++i)
    for (std::size_t j = 0; j < th; ++j) {
      if (i == j) continue;
      if (comp_of[i] == comp_of[j]) {
        if (D.A[i][j] == 0 && i > j) continue;
        Poly p = letter(static_cast<int>(j));
        Root dp = unit(th, j);
        for (long k = 0; k < 1 - D.A[i][j]; ++k) {
          p = braided_commutator(D, letter(static_cast<int>(i)), unit(th, i), p, dp);
          dp[i] += 1;
        }
        Relation r;
        r.name = "serre(" + std::to_string(i) + "," + std::to_string(j) + ")";
        r.xs = p;
        out.push_back(r);
      } else if (i < j) {
        Relation r;
        r.name = "link(" + std::to_string(i) + "," + std::to_string(j) + ")";
        r.xs = braided_commutator(D, letter(static_cast<int>(i)), unit(th, i), letter(static_cast<int>(j)), unit(th, j));
        auto it = lambda.find({static_cast<int>(i), static_cast<int>(j)});
        if (it != lambda.end() && !it->second.is_zero()) {
          Elt g = D.doubled().iota_inv(D.big.add(D.h[i], D.h[j]));
          if (g != D.base.identity()) {
            r.gs.emplace_back(D.base.identity(), -it->second);
            r.gs.emplace_back(g, it->second);
          }
        }
        out.push_back(r);
      }
    }

  RootSystem R = root_system(D.A);
  std::map<std::size_t, Poly> memo;
  std::vector<bool> comp_has_mu(comps.size(), false);
  for (auto& [a, x] : mu)
    if (!x.is_zero() && height(a) == 1) {
      std::size_t i = std::find(a.begin(), a.end(), 1) - a.begin();
      comp_has_mu[comp_of[i]] = true;
    }
  BraidFn braid = [&D](const Root& a, const Root& b) { return braid_exp(D, a, b); };
  for (std::size_t l = 0; l < R.positive.size(); ++l) {
    const Root& beta = R.positive[l];
    int k = R.component_of_root[l];
    long N = D.q_order(R.components[k].vertices[0], R.components[k].vertices[0]);
    if (height(beta) > 1 && comp_has_mu[k])
      throw UnsupportedRecursion("root vector parameters at non-simple roots need the general recursion");
    Poly x = root_vector_in(R, D.conductor(), braid, l, memo);
    Poly p = Poly{{Word(), CycloNumber(1)}};
    for (long e = 0; e < N; ++e) p = poly_mul(p, x);
    Relation r;
    r.name = "power(";
    for (std::size_t t = 0; t < beta.size(); ++t) r.name += (t ? "," : "") + std::to_string(beta[t]);
    r.name += ")";
    r.xs = p;
    for (auto& [g, c] : u_alpha_terms(D, mu, beta)) r.gs.emplace_back(g, -c);
    out.push_back(r);
  }
  return out;
}

// the algebra

QuasiHopfAlgebra::QuasiHopfAlgebra(CartanDatum D, Linking lambda, RootParams mu, CocycleParams c,
                                   std::vector<Relation> rels, long budget,
                                   const std::vector<RewriteSystem::Rule>* rules)
    : D_(std::move(D)), lambda_(std::move(lambda)), mu_(std::move(mu)), c_(std::move(c)), rels_(std::move(rels)) {
  const AbGroup& G = D_.base;
  long order = G.order();
  long expected_l = 0;
  {
    mpz_class dimz = dimension(D_);
    long lim = resolve_budget(budget);
    if (dimz > lim) throw BudgetExceeded("dimension " + dimz.get_str() + " exceeds the budget " + std::to_string(lim));
    expected_l = dimz.get_si();
  }
  L_ = D_.conductor();
  top_ = top_degree(D_);
  elts_ = G.elements();
  std::size_t th = D_.theta();

  std::vector<Elt> sh(th, G.identity());
  for (auto& r : rels_)
    if (r.kind == Relation::Kind::Commutation) sh[r.letter][r.gen] = r.exp;
  for (auto& e : sh) shift_.push_back(G.index(G.reduce(e)));
  rs_ = RewriteSystem(G, shift_, th);

  long eg = G.exponent();
  for (auto& r : rels_) {
    if (rules || r.kind != Relation::Kind::Polynomial) continue;
    for (long f = 0; f < order; ++f) {
      Poly p = r.xs;
      for (auto& [g, x] : r.gs)
        poly_add(p, Word(), x * CycloNumber::root(eg, -G.char_exp(elts_[f], g)));
      if (!p.empty()) rs_.add(p, f);
    }
  }
  if (rules)
    rs_.load(*rules);
  else
    rs_.complete(static_cast<std::size_t>(top_ + 1));

  // normal words, breadth first by length
  lookup_.assign(order, {});
  std::vector<std::pair<Word, long>> layer;
  for (long f = 0; f < order; ++f)
    if (!rs_.reducible(Word(), f)) layer.emplace_back(Word(), f);
  for (long len = 0; !layer.empty(); ++len) {
    if (len > top_) throw DimensionMismatch("normal word of length " + std::to_string(len) + " beyond the PBW bound");
    for (auto& [w, f] : layer) {
      lookup_[f][w] = static_cast<long>(words_.size());
      words_.push_back(w);
      rid_.push_back(f);
      lid_.push_back(rs_.left_idem(w, f));
    }
    if (static_cast<long>(words_.size()) > expected_l)
      throw DimensionMismatch("found more than " + std::to_string(expected_l) + " normal words");
    std::vector<std::pair<Word, long>> next;
    for (auto& [w, f] : layer)
      for (std::size_t x = 0; x < th; ++x) {
        Word v = w + static_cast<char>(x);
        long g = G.add_idx(f, shift_[x]);
        if (!rs_.suffix_reducible(v, g)) next.emplace_back(std::move(v), g);
      }
    std::sort(next.begin(), next.end(), [](auto& a, auto& b) { return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a < b; });
    layer = std::move(next);
  }
  if (static_cast<long>(words_.size()) != expected_l)
    throw DimensionMismatch("found " + std::to_string(words_.size()) + " normal words, expected " +
                            std::to_string(expected_l));

  phi_ = phi(c_);
  if (order * order * order <= (1L << 22)) {
    phi_table_.resize(order * order * order);
    for (long a = 0; a < order; ++a)
      for (long b = 0; b < order; ++b)
        for (long d = 0; d < order; ++d) phi_table_[(a * order + b) * order + d] = phi_.exp(a, b, d);
  }
}

long QuasiHopfAlgebra::index_of(const Word& w, long f) const {
  auto it = lookup_[f].find(w);
  return it == lookup_[f].end() ? -1 : it->second;
}

std::string QuasiHopfAlgebra::basis_str(long b) const {
  std::ostringstream os;
  os << word_str(words_[b]) << "*1_[";
  const Elt& e = elts_[rid_[b]];
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << "]";
  return os.str();
}

std::string QuasiHopfAlgebra::str(const AlgElt& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [b, c] : x.c) {
    os << (first ? "" : " + ") << "(" << c.str() << ")" << basis_str(b);
    first = false;
  }
  return os.str();
}

std::string QuasiHopfAlgebra::str(const TensorElt& t) const {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : t.c) {
    os << (first ? "" : " + ") << "(" << c.str() << ")";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? " (x) " : "") << basis_str(k[i]);
    first = false;
  }
  return os.str();
}

AlgElt QuasiHopfAlgebra::idem(long f) const {
  AlgElt r;
  r.add(index_of(Word(), f), CycloNumber(1));
  return r;
}

AlgElt QuasiHopfAlgebra::one() const {
  AlgElt r;
  for (long f = 0; f < static_cast<long>(elts_.size()); ++f) r.add(index_of(Word(), f), CycloNumber(1));
  return r;
}

long QuasiHopfAlgebra::char_exp(long f, const Elt& g) const {
  return D_.base.char_exp(elts_[f], g) * (L_ / D_.base.exponent());
}

AlgElt QuasiHopfAlgebra::group_elt(const Elt& g) const {
  AlgElt r;
  for (long f = 0; f < static_cast<long>(elts_.size()); ++f) r.add(index_of(Word(), f), root(-char_exp(f, g)));
  return r;
}

AlgElt QuasiHopfAlgebra::word_elt(const Word& w, long f) const {
  AlgElt r;
  if (long b = index_of(w, f); b >= 0) {
    r.add(b, CycloNumber(1));
    return r;
  }
  for (auto& [v, x] : rs_.reduce(Poly{{w, CycloNumber(1)}}, f)) {
    long b = index_of(v, f);
    if (b < 0) throw DimensionMismatch("reduction left the word " + word_str(v) + " outside the basis");
    r.add(b, x);
  }
  return r;
}

AlgElt QuasiHopfAlgebra::gen(int i) const {
  AlgElt r;
  for (long f = 0; f < static_cast<long>(elts_.size()); ++f) r += word_elt(Word(1, static_cast<char>(i)), f);
  return r;
}

AlgElt QuasiHopfAlgebra::from_poly(const Poly& p) const {
  AlgElt r;
  for (long f = 0; f < static_cast<long>(elts_.size()); ++f)
    for (auto& [w, x] : p) r += x * word_elt(w, f);
  return r;
}

AlgElt QuasiHopfAlgebra::rmul_letter(long b, int x) const {
  std::uint64_t key = static_cast<std::uint64_t>(b) * 64 + static_cast<std::uint64_t>(x);
  {
    std::lock_guard<std::mutex> lk(mu_cache_);
    if (auto it = rmul_cache_.find(key); it != rmul_cache_.end()) return it->second;
  }
  AlgElt r = word_elt(words_[b] + static_cast<char>(x), D_.base.add_idx(rid_[b], shift_[x]));
  std::lock_guard<std::mutex> lk(mu_cache_);
  rmul_cache_.emplace(key, r);
  return r;
}

AlgElt QuasiHopfAlgebra::mul_basis(long a, long b) const {
  AlgElt cur;
  if (rid_[a] != lid_[b]) return cur;
  cur.add(a, CycloNumber(1));
  for (char x : words_[b]) {
    AlgElt next;
    for (auto& [e, c] : cur.c) {
      AlgElt step = rmul_letter(e, static_cast<unsigned char>(x));
      for (auto& [e2, c2] : step.c) next.add(e2, c * c2);
    }
    cur = std::move(next);
  }
  return cur;
}

AlgElt QuasiHopfAlgebra::mul(const AlgElt& a, const AlgElt& b) const {
  std::unordered_map<long, std::vector<const std::pair<const long, CycloNumber>*>> by_lid;
  for (auto& t : b.c) by_lid[lid_[t.first]].push_back(&t);
  AlgElt r;
  for (auto& [ia, ca] : a.c) {
    auto it = by_lid.find(rid_[ia]);
    if (it == by_lid.end()) continue;
    for (auto* tb : it->second) {
      CycloNumber s = ca * tb->second;
      for (auto& [e, x] : mul_basis(ia, tb->first).c) r.add(e, s * x);
    }
  }
  return r;
}

AlgElt QuasiHopfAlgebra::pow(const AlgElt& a, long k) const {
  AlgElt r = one();
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

AlgElt QuasiHopfAlgebra::residue(const Relation& r) const {
  if (r.kind == Relation::Kind::Commutation) {
    Elt g = D_.base.generator(r.gen);
    AlgElt x = gen(r.letter);
    AlgElt lhs = mul(mul(group_elt(g), x), group_elt(D_.base.neg(g)));
    return lhs - CycloNumber::root(D_.base.orders()[r.gen], r.exp) * x;
  }
  AlgElt s = from_poly(r.xs);
  for (auto& [g, x] : r.gs) s += x * group_elt(g);
  return s;
}

// structure constants

namespace {

long defect(long x, long m) { return reduce_with_defect(x, m).second; }

}  // namespace

long QuasiHopfAlgebra::theta_exp(int l, long f) const {
  const auto& m = D_.base.orders();
  long e = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    long M = m[i] * m[i];
    e = mod_l(e - elts_[f][i] * D_.h[l][i] % M * (L_ / M), L_);
  }
  return e;
}

long QuasiHopfAlgebra::psi_exp(int l, long f, long g) const {
  const auto& m = D_.base.orders();
  std::size_t n = m.size();
  std::vector<long> dk(n);
  long e = 0;
  for (std::size_t j = 0; j < n; ++j) {
    long M = m[j] * m[j];
    dk[j] = defect(mod_l(elts_[f][j] - D_.r[l][j], M), m[j]);
    e = mod_l(e + mod_l(c_.c[j] * elts_[g][j] % M * dk[j], M) * (L_ / M), L_);
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      long v = c_.get2(static_cast<int>(s), static_cast<int>(t));
      if (!v) continue;
      long M = m[s] * m[t];
      e = mod_l(e + mod_l(v * elts_[g][t] % M * dk[s], M) * (L_ / M), L_);
    }
  if (!psi_delta_.empty())
    if (auto it = psi_delta_.find({l, f, g}); it != psi_delta_.end()) e = mod_l(e + it->second, L_);
  return e;
}

long QuasiHopfAlgebra::upsilon_exp(long g) const {
  const auto& m = D_.base.orders();
  std::size_t n = m.size();
  const Elt& x = elts_[g];
  long e = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i]) e = mod_l(e - c_.c[i] * x[i] % m[i] * (L_ / m[i]), L_);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      long v = c_.get2(static_cast<int>(s), static_cast<int>(t));
      if (v && x[s]) e = mod_l(e - v * x[t] % m[t] * (L_ / m[t]), L_);
    }
  return e;
}

long QuasiHopfAlgebra::effe_exp(int i, long g) const {
  const auto& m = D_.base.orders();
  std::size_t n = m.size();
  std::vector<long> z(n), dz(n);
  long e = 0;
  for (std::size_t j = 0; j < n; ++j) {
    long M = m[j] * m[j];
    z[j] = mod_l(elts_[g][j] - D_.r[i][j], M);
    dz[j] = defect(z[j], m[j]);
    long t = mod_l(z[j] * D_.h[i][j] - mod_l(c_.c[j] * z[j] % M * dz[j], M), M);
    e = mod_l(e + t * (L_ / M), L_);
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      long v = c_.get2(static_cast<int>(s), static_cast<int>(t));
      if (!v) continue;
      long M = m[s] * m[t];
      e = mod_l(e - mod_l(v * (z[t] % M) % M * dz[s], M) * (L_ / M), L_);
    }
  return e;
}

long QuasiHopfAlgebra::phi_exp(long f, long g, long h) const {
  long n = static_cast<long>(elts_.size());
  long e = phi_table_.empty() ? phi_.exp(f, g, h) : phi_table_[(f * n + g) * n + h];
  e = e * (L_ / phi_.conductor());
  if (!phi_delta_.empty())
    if (auto it = phi_delta_.find({f, g, h}); it != phi_delta_.end()) e += it->second;
  return mod_l(e, L_);
}

void QuasiHopfAlgebra::mutate_psi(int l, long f, long g, long delta) {
  psi_delta_[{l, f, g}] += delta;
  std::lock_guard<std::mutex> lk(mu_cache_);
  delta_cache_.clear();
}

void QuasiHopfAlgebra::mutate_phi(long f, long g, long h, long delta) { phi_delta_[{f, g, h}] += delta; }

// structure maps

TensorElt QuasiHopfAlgebra::coproduct_gen(int i) const {
  long n = static_cast<long>(elts_.size());
  TensorElt t(2);
  Word x(1, static_cast<char>(i));
  for (long f = 0; f < n; ++f) {
    long xf = index_of(x, f), e = index_of(Word(), f);
    for (long g = 0; g < n; ++g) {
      long xg = index_of(x, g), eg = index_of(Word(), g);
      t.add({xf, eg}, psi(i, f, g));
      t.add({e, xg}, theta(i, f));
    }
  }
  return t;
}

TensorElt QuasiHopfAlgebra::coproduct_basis(long b) const {
  {
    std::lock_guard<std::mutex> lk(mu_cache_);
    if (auto it = delta_cache_.find(b); it != delta_cache_.end()) return it->second;
  }
  const AbGroup& G = D_.base;
  long n = static_cast<long>(elts_.size());
  long f = rid_[b];
  TensorElt t(2);
  if (words_[b].empty()) {
    for (long a = 0; a < n; ++a) t.add({index_of(Word(), a), index_of(Word(), G.add_idx(f, G.neg_idx(a)))}, CycloNumber(1));
  } else {
    TensorElt acc = coproduct_gen(static_cast<unsigned char>(words_[b][0]));
    for (std::size_t k = 1; k < words_[b].size(); ++k)
      acc = tmul(acc, coproduct_gen(static_cast<unsigned char>(words_[b][k])));
    for (auto& [key, x] : acc.c)
      if (G.add_idx(rid_[key[0]], rid_[key[1]]) == f) t.c.emplace(key, x);
  }
  std::lock_guard<std::mutex> lk(mu_cache_);
  delta_cache_.emplace(b, t);
  return t;
}

TensorElt QuasiHopfAlgebra::coproduct(const AlgElt& x) const {
  TensorElt t(2);
  for (auto& [b, c] : x.c) t += c * coproduct_basis(b);
  return t;
}

TensorElt QuasiHopfAlgebra::associator() const {
  long n = static_cast<long>(elts_.size());
  TensorElt t(3);
  for (long f = 0; f < n; ++f)
    for (long g = 0; g < n; ++g)
      for (long h = 0; h < n; ++h)
        t.c.emplace(std::vector<long>{index_of(Word(), f), index_of(Word(), g), index_of(Word(), h)},
                    root(phi_exp(f, g, h)));
  return t;
}

TensorElt QuasiHopfAlgebra::associator_inv() const {
  long n = static_cast<long>(elts_.size());
  TensorElt t(3);
  for (long f = 0; f < n; ++f)
    for (long g = 0; g < n; ++g)
      for (long h = 0; h < n; ++h)
        t.c.emplace(std::vector<long>{index_of(Word(), f), index_of(Word(), g), index_of(Word(), h)},
                    root(-phi_exp(f, g, h)));
  return t;
}

AlgElt QuasiHopfAlgebra::antipode_basis(long b) const {
  {
    std::lock_guard<std::mutex> lk(mu_cache_);
    if (auto it = s_cache_.find(b); it != s_cache_.end()) return it->second;
  }
  const AbGroup& G = D_.base;
  long n = static_cast<long>(elts_.size());
  AlgElt r = idem(G.neg_idx(rid_[b]));
  const Word& w = words_[b];
  for (std::size_t k = w.size(); k-- > 0;) {
    int i = static_cast<unsigned char>(w[k]);
    AlgElt s;
    for (long g = 0; g < n; ++g) s += effe(i, g) * word_elt(Word(1, w[k]), g);
    r = mul(r, s);
  }
  std::lock_guard<std::mutex> lk(mu_cache_);
  s_cache_.emplace(b, r);
  return r;
}

AlgElt QuasiHopfAlgebra::antipode(const AlgElt& x) const {
  AlgElt r;
  for (auto& [b, c] : x.c) r += c * antipode_basis(b);
  return r;
}

AlgElt QuasiHopfAlgebra::alpha() const {
  AlgElt r;
  for (long g = 0; g < static_cast<long>(elts_.size()); ++g) r.add(index_of(Word(), g), upsilon(g));
  return r;
}

CycloNumber QuasiHopfAlgebra::counit(const AlgElt& x) const {
  long e = index_of(Word(), D_.base.index(D_.base.identity()));
  auto it = x.c.find(e);
  return it == x.c.end() ? CycloNumber(0) : it->second;
}

// tensors

TensorElt QuasiHopfAlgebra::tensor(const std::vector<AlgElt>& factors) const {
  TensorElt t(static_cast<int>(factors.size()));
  std::vector<std::pair<std::vector<long>, CycloNumber>> acc{{{}, CycloNumber(1)}};
  for (auto& f : factors) {
    std::vector<std::pair<std::vector<long>, CycloNumber>> next;
    for (auto& [k, x] : acc)
      for (auto& [b, y] : f.c) {
        auto k2 = k;
        k2.push_back(b);
        next.emplace_back(std::move(k2), x * y);
      }
    acc = std::move(next);
  }
  for (auto& [k, x] : acc) t.add(k, x);
  return t;
}

TensorElt QuasiHopfAlgebra::tmul(const TensorElt& a, const TensorElt& b) const {
  if (a.rank != b.rank) throw DimensionMismatch("tensor ranks differ");
  std::map<std::vector<long>, std::vector<const std::pair<const std::vector<long>, CycloNumber>*>> by_lid;
  for (auto& t : b.c) {
    std::vector<long> key(t.first.size());
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = lid_[t.first[i]];
    by_lid[key].push_back(&t);
  }
  TensorElt r(a.rank);
  std::vector<long> key(a.rank);
  for (auto& [ka, xa] : a.c) {
    for (int i = 0; i < a.rank; ++i) key[i] = rid_[ka[i]];
    auto it = by_lid.find(key);
    if (it == by_lid.end()) continue;
    for (auto* tb : it->second) {
      std::vector<AlgElt> parts;
      bool zero = false;
      for (int i = 0; i < a.rank && !zero; ++i) {
        parts.push_back(mul_basis(ka[i], tb->first[i]));
        zero = parts.back().is_zero();
      }
      if (zero) continue;
      r += (xa * tb->second) * tensor(parts);
    }
  }
  return r;
}

TensorElt QuasiHopfAlgebra::apply_coproduct(const TensorElt& t, int slot) const {
  TensorElt r(t.rank + 1);
  for (auto& [k, x] : t.c) {
    TensorElt d = coproduct_basis(k[slot]);
    for (auto& [kd, y] : d.c) {
      std::vector<long> key(k.begin(), k.begin() + slot);
      key.insert(key.end(), kd.begin(), kd.end());
      key.insert(key.end(), k.begin() + slot + 1, k.end());
      r.add(key, x * y);
    }
  }
  return r;
}

TensorElt QuasiHopfAlgebra::apply_counit(const TensorElt& t, int slot) const {
  TensorElt r(t.rank - 1);
  long e = index_of(Word(), D_.base.index(D_.base.identity()));
  for (auto& [k, x] : t.c) {
    if (k[slot] != e) continue;
    std::vector<long> key(k.begin(), k.begin() + slot);
    key.insert(key.end(), k.begin() + slot + 1, k.end());
    r.add(key, x);
  }
  return r;
}

TensorElt QuasiHopfAlgebra::phi_left(const TensorElt& t, bool inverse) const {
  TensorElt r(3);
  for (auto& [k, x] : t.c) {
    long e = phi_exp(lid_[k[0]], lid_[k[1]], lid_[k[2]]);
    r.c.emplace(k, x * root(inverse ? -e : e));
  }
  return r;
}

TensorElt QuasiHopfAlgebra::phi_right(const TensorElt& t, bool inverse) const {
  TensorElt r(3);
  for (auto& [k, x] : t.c) {
    long e = phi_exp(rid_[k[0]], rid_[k[1]], rid_[k[2]]);
    r.c.emplace(k, x * root(inverse ? -e : e));
  }
  return r;
}

std::shared_ptr<QuasiHopfAlgebra> build(const CartanDatum& D, const Linking& lambda, const RootParams& mu,
                                        const CocycleParams& c, long budget,
                                        const std::vector<RewriteSystem::Rule>* rules) {
  DatumReport dr = validate_datum(D);
  if (!dr.ok()) throw BuildRejected("datum: " + dr.first_failure()->name + " " + dr.first_failure()->detail);
  Report lr = validate_linking(D, lambda);
  if (!lr.ok()) throw BuildRejected("linking: " + lr.first_failure()->name + " " + lr.first_failure()->detail);
  Report mr = validate_rootparams(D, mu);
  if (!mr.ok()) throw BuildRejected("root parameters: " + mr.first_failure()->name + " " + mr.first_failure()->detail);
  if (c.group != D.base) throw GroupMismatch("cocycle parameters live on a different group");
  if (!is_abelian(c)) throw GammaViolation("c_rst must vanish");
  if (!in_gamma(D, c)) throw GammaViolation(c.str() + " is not in Gamma(D)");
  return std::make_shared<QuasiHopfAlgebra>(D, lambda, mu, c, defining_relations(D, lambda, mu), budget, rules);
}

}  // namespace qha
