#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qha/algebra.hpp"

namespace qha {

struct AxiomReport : Report {
  double seconds = 0;
};

/** Residues of the defining relations vanish in H, and the counit kills them. */
AxiomReport check_relations(const QuasiHopfAlgebra& H);

/**
 * Counit, multiplicativity of the coproduct on every relation, quasi-coassociativity,
 * pentagon and normalization of the associator.  With brute = true the counit and
 * quasi-coassociativity checks also run over every basis element.
 */
AxiomReport check_quasi_bialgebra(const QuasiHopfAlgebra& H, bool brute = false);

/** The two antipode zigzags on generators (all basis elements if brute) and the two Phi identities. */
AxiomReport check_antipode(const QuasiHopfAlgebra& H, bool brute = false);

/** Associativity and anti-multiplicativity of S: exhaustive over basis pairs/triples up to max_dim, else sampled. */
AxiomReport check_algebra(const QuasiHopfAlgebra& H, long max_dim = 100, unsigned seed = 1);

/** Everything above; brute force when dim <= brute_dim. */
AxiomReport verify_all(const QuasiHopfAlgebra& H, long brute_dim = 100);

/** Pentagon on a group: the 3-cocycle identity over all quadruples. */
std::optional<std::string> pentagon_witness(const AbGroup& G, const std::function<long(long, long, long)>& phi_exp,
                                            long M);

// twisting group-algebra quasi-Hopf data

/** k[G] with associator sum phi(f,g,h) 1_f (x) 1_g (x) 1_h and antipode (id, alpha, beta) on idempotents. */
struct GroupQuasiHopf {
  AbGroup group;
  Cochain3 phi;
  std::vector<CycloNumber> alpha, beta;

  static GroupQuasiHopf trivial(const AbGroup& G);
};

/** J = sum J(f,g) 1_f (x) 1_g; coproduct and antipode of k[G] are unchanged by the twist. */
GroupQuasiHopf twist(const GroupQuasiHopf& H0, const Cochain2& J);

/** J_c on the doubled group as a 2-cochain. */
Cochain2 jc_twist(const CocycleParams& c);

/** Twisting k[doubled group] by J_c reproduces phi_c on the idempotents pulled back from G. */
AxiomReport check_twist_identity(const AbGroup& G, const CocycleParams& c, long budget = 0);

// genuineness

struct QuotientCocycle {
  AbGroup group;               // the quotient G'
  std::vector<Elt> generators;  // images in G of the generators of G' (inside the annihilator)
  Cochain3 cocycle;
  std::optional<CocycleParams> params;
};

/**
 * Quotient of k[G] by the relations k = 1 for k in `kill`.  Idempotents survive
 * exactly on the annihilator of the killed subgroup, which carries the induced
 * associator.
 */
QuotientCocycle quotient_cocycle(const AbGroup& G, const CocycleParams& c, const std::vector<Elt>& kill);

struct Verdict {
  bool genuine = false;
  std::string certificate;
  std::vector<std::string> details;
};

Verdict genuineness(const CartanDatum& D, const Linking& lambda, const RootParams& mu, const CocycleParams& c,
                    const std::map<std::string, long>& recipe_args = {});

// mutations

struct Mutation {
  enum class Kind { Psi, Phi, Relation };
  Kind kind = Kind::Psi;
  int l = 0;
  long f = 0, g = 0, h = 0, delta = 0;
  int rel = -1, term = -1;

  std::string str() const;
};

std::vector<Mutation> random_mutations(const QuasiHopfAlgebra& H, int count, unsigned seed);

/** Mutated copy; relation mutations rebuild the rewrite system and may throw DimensionMismatch. */
std::shared_ptr<QuasiHopfAlgebra> apply_mutation(const QuasiHopfAlgebra& H, const Mutation& m);

}  // namespace qha
