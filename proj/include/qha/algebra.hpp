#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qha/datum.hpp"
#include "qha/rewriting.hpp"

namespace qha {

/** Sparse vector over the normal-word basis of an algebra. */
struct AlgElt {
  std::map<long, CycloNumber> c;

  bool is_zero() const { return c.empty(); }
  void add(long b, const CycloNumber& x);
  AlgElt& operator+=(const AlgElt& o);
  AlgElt& operator-=(const AlgElt& o);
  friend AlgElt operator+(AlgElt a, const AlgElt& b) { return a += b; }
  friend AlgElt operator-(AlgElt a, const AlgElt& b) { return a -= b; }
  friend AlgElt operator*(const CycloNumber& s, const AlgElt& a);
  friend bool operator==(const AlgElt& a, const AlgElt& b);
  friend bool operator!=(const AlgElt& a, const AlgElt& b) { return !(a == b); }
};

/** Sparse element of the k-fold tensor power, keyed by basis index tuples. */
struct TensorElt {
  int rank = 2;
  std::map<std::vector<long>, CycloNumber> c;

  TensorElt() = default;
  explicit TensorElt(int k) : rank(k) {}
  bool is_zero() const { return c.empty(); }
  void add(const std::vector<long>& key, const CycloNumber& x);
  TensorElt& operator+=(const TensorElt& o);
  TensorElt& operator-=(const TensorElt& o);
  friend TensorElt operator+(TensorElt a, const TensorElt& b) { return a += b; }
  friend TensorElt operator-(TensorElt a, const TensorElt& b) { return a -= b; }
  friend TensorElt operator*(const CycloNumber& s, const TensorElt& a);
  friend bool operator==(const TensorElt& a, const TensorElt& b);
};

/**
 * A defining relation.  Commutation relations read g X g^{-1} = zeta_{m_gen}^{exp} X
 * and fix how idempotents move past letters; polynomial relations are
 * xs + sum_g coeff g = 0.
 */
struct Relation {
  enum class Kind { Commutation, Polynomial };
  Kind kind = Kind::Polynomial;
  std::string name;
  int letter = 0, gen = 0;
  long exp = 0;
  Poly xs;
  std::vector<std::pair<Elt, CycloNumber>> gs;

  std::string str() const;
};

/** braiding exponent of zeta_L for (deg a, deg b): prod q_ij^{a_i b_j} */
long braid_exp(const CartanDatum& D, const Root& a, const Root& b);

/** [a, b]_c = ab - q(deg a, deg b) ba on free polynomials. */
Poly braided_commutator(const CartanDatum& D, const Poly& a, const Root& da, const Poly& b, const Root& db);

/** Iterated braided commutator for a positive root, as a polynomial in the letters. */
Poly root_vector(const CartanDatum& D, const Root& beta);

// exponent of zeta_L braiding degree a past degree b
using BraidFn = std::function<long(const Root&, const Root&)>;
Poly root_vector(const IntMatrix& A, long L, const BraidFn& braid, const Root& beta);

/** sum_beta (N_beta - 1) ht(beta): the longest normal word. */
long top_degree(const CartanDatum& D);

/** Dimension budget: explicit value if positive, else QHA_BUDGET, else 5000. */
long resolve_budget(long explicit_budget = 0);

std::vector<Relation> defining_relations(const CartanDatum& D, const Linking& lambda, const RootParams& mu);

class QuasiHopfAlgebra {
 public:
  // builds from the given relation list; the commutation relations fix the idempotent shifts
  // with `rules` set, completion is skipped and the given rule set is installed
  QuasiHopfAlgebra(CartanDatum D, Linking lambda, RootParams mu, CocycleParams c, std::vector<Relation> rels,
                   long budget = 0, const std::vector<RewriteSystem::Rule>* rules = nullptr);

  const CartanDatum& datum() const { return D_; }
  const Linking& lambda() const { return lambda_; }
  const RootParams& mu() const { return mu_; }
  const CocycleParams& params() const { return c_; }
  const std::vector<Relation>& relations() const { return rels_; }
  const RewriteSystem& rewriting() const { return rs_; }
  const AbGroup& group() const { return D_.base; }
  long conductor() const { return L_; }
  long top() const { return top_; }

  // basis: normal words w 1_f
  std::size_t dim() const { return words_.size(); }
  const Word& word(long b) const { return words_[b]; }
  long rid(long b) const { return rid_[b]; }
  long lid(long b) const { return lid_[b]; }
  long index_of(const Word& w, long f) const;  // -1 unless (w, f) is a normal word
  std::string basis_str(long b) const;
  std::string str(const AlgElt& x) const;
  std::string str(const TensorElt& t) const;

  // elements
  AlgElt one() const;
  AlgElt idem(long f) const;
  AlgElt group_elt(const Elt& g) const;
  AlgElt gen(int i) const;
  AlgElt word_elt(const Word& w, long f) const;  // normal form of w 1_f
  AlgElt from_poly(const Poly& p) const;         // sum over f of p 1_f
  AlgElt mul(const AlgElt& a, const AlgElt& b) const;
  AlgElt mul_basis(long a, long b) const;
  AlgElt pow(const AlgElt& a, long k) const;
  AlgElt residue(const Relation& r) const;

  // structure constants, as exponents of zeta_L
  long theta_exp(int l, long f) const;
  long psi_exp(int l, long f, long g) const;
  long upsilon_exp(long g) const;
  long effe_exp(int i, long g) const;  // F_i(g) = -zeta_L^{effe_exp}
  long phi_exp(long f, long g, long h) const;
  long char_exp(long f, const Elt& g) const;  // chi_f(g) for f, g in G
  CycloNumber root(long e) const { return CycloNumber::root(L_, e); }
  CycloNumber psi(int l, long f, long g) const { return root(psi_exp(l, f, g)); }
  CycloNumber theta(int l, long f) const { return root(theta_exp(l, f)); }
  CycloNumber upsilon(long g) const { return root(upsilon_exp(g)); }
  CycloNumber effe(int i, long g) const { return -root(effe_exp(i, g)); }

  // structure maps
  TensorElt coproduct(const AlgElt& x) const;
  TensorElt coproduct_basis(long b) const;
  TensorElt coproduct_gen(int i) const;
  TensorElt associator() const;
  TensorElt associator_inv() const;
  AlgElt antipode(const AlgElt& x) const;
  AlgElt antipode_basis(long b) const;
  AlgElt alpha() const;
  CycloNumber counit(const AlgElt& x) const;

  // tensor helpers
  TensorElt tensor(const std::vector<AlgElt>& factors) const;
  TensorElt tmul(const TensorElt& a, const TensorElt& b) const;
  TensorElt apply_coproduct(const TensorElt& t, int slot) const;  // rank k -> k+1
  TensorElt apply_counit(const TensorElt& t, int slot) const;     // rank k -> k-1
  // Phi t and t Phi^{-1} style diagonal actions of a rank-3 idempotent function
  TensorElt phi_left(const TensorElt& t, bool inverse = false) const;
  TensorElt phi_right(const TensorElt& t, bool inverse = false) const;

  // mutation hooks: change one Psi value or one associator value
  void mutate_psi(int l, long f, long g, long delta);
  void mutate_phi(long f, long g, long h, long delta);
  const std::map<std::tuple<int, long, long>, long>& psi_mutations() const { return psi_delta_; }
  bool phi_mutated() const { return !phi_delta_.empty(); }

 private:
  AlgElt rmul_letter(long b, int x) const;
  long canonical_lift(long f, std::size_t j) const { return elts_[f][j]; }

  CartanDatum D_;
  Linking lambda_;
  RootParams mu_;
  CocycleParams c_;
  std::vector<Relation> rels_;
  long L_ = 1;
  long top_ = 0;
  RewriteSystem rs_;
  std::vector<Word> words_;
  std::vector<long> rid_, lid_;
  std::vector<std::unordered_map<Word, long>> lookup_;  // per idempotent
  std::vector<Elt> elts_;                              // elements of G by index
  std::vector<long> shift_;                            // idempotent shift per letter
  Cochain3 phi_;
  std::vector<long> phi_table_;
  std::map<std::tuple<long, long, long>, long> phi_delta_;
  std::map<std::tuple<int, long, long>, long> psi_delta_;

  mutable std::mutex mu_cache_;
  mutable std::unordered_map<std::uint64_t, AlgElt> rmul_cache_;
  mutable std::unordered_map<long, TensorElt> delta_cache_;
  mutable std::unordered_map<long, AlgElt> s_cache_;
};

using AlgebraPtr = std::shared_ptr<const QuasiHopfAlgebra>;

/**
 * Validates the inputs, checks c in Gamma(D) and the dimension budget, then
 * completes the rewrite system and enumerates the normal words.
 */
std::shared_ptr<QuasiHopfAlgebra> build(const CartanDatum& D, const Linking& lambda, const RootParams& mu,
                                        const CocycleParams& c, long budget = 0,
                                        const std::vector<RewriteSystem::Rule>* rules = nullptr);

// E/F presentation of a small quasi-quantum group

struct EFPresentation {
  std::size_t n = 0;
  std::vector<AlgElt> E, F;
  Report relations;    // residues of the E/F relations
  Report closed_forms;  // printed closed forms against the structure maps
  std::vector<TensorElt> dE, dF;
  std::vector<AlgElt> SE, SF;
  long u_plus = 1, u_minus = 1;  // dimensions of the triangular parts
};

EFPresentation ef_presentation(const QuasiHopfAlgebra& H);

}  // namespace qha
