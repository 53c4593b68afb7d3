#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qha/abgroup.hpp"
#include "qha/cartan.hpp"
#include "qha/cohomology.hpp"
#include "qha/linalg.hpp"
#include "qha/report.hpp"

namespace qha {

/**
 * Datum of Cartan type over the doubled group.
 *
 * h[i] holds the exponents s_ij of h_i in the doubled group and r[i][j] the
 * exponent with chi_i(big generator j) = zeta_{m_j^2}^{r_ij}.  Indices are
 * 0-based throughout.
 */
struct CartanDatum {
  AbGroup base;
  AbGroup big;
  std::vector<Elt> h;
  IntMatrix r;
  IntMatrix A;
  std::string label;

  CartanDatum() = default;
  CartanDatum(const AbGroup& G, std::vector<Elt> h, IntMatrix r, IntMatrix A, std::string label = "");

  std::size_t theta() const { return h.size(); }
  long conductor() const { return big.exponent(); }

  // chi_i(x) as an exponent of zeta_conductor()
  long chi_exp(std::size_t i, const Elt& x) const;
  long chi_row_exp(const std::vector<long>& row, const Elt& x) const;
  long q_exp(std::size_t i, std::size_t j) const { return chi_exp(j, h[i]); }
  CycloNumber q(std::size_t i, std::size_t j) const;
  long q_order(std::size_t i, std::size_t j) const;

  Elt h_root(const Root& a) const;                   // prod h_i^{a_i}
  std::vector<long> chi_root(const Root& a) const;  // exponent row of prod chi_i^{a_i}
  bool in_G(const Elt& x) const;
  DoubledGroup doubled() const { return DoubledGroup(base); }
};

/** Order of zeta_L^e. */
long root_order(long e, long L);

struct ComponentInfo {
  DynkinComponent comp;
  long N = 0;                 // common order of the q_ii
  std::optional<long> q_exp;  // q_ii = q^{2 d_i}, q = zeta_L^{q_exp}
  std::vector<long> d;        // symmetrizer restricted to the component
};

struct DatumReport : Report {
  std::vector<ComponentInfo> components;
};

DatumReport validate_datum(const CartanDatum& D);

/** N_J for the component containing vertex i; requires a finite Cartan matrix. */
long component_order(const CartanDatum& D, std::size_t i);

// Gamma(D)

/** a x = b (mod n) for the variable named `var`. */
struct Congruence {
  std::string var;
  long a = 0, b = 0, n = 1;
  std::string origin;  // which family of conditions produced it
};

std::vector<Congruence> gamma_conditions(const CartanDatum& D);

/** Solutions {base + k step} that lie in [0, range). */
struct GammaVar {
  std::optional<Progression> sol;
  long range = 1;

  bool empty() const { return !sol || sol->base >= range; }
  bool contains(long x) const;
  bool has_zero() const { return contains(0); }
  std::optional<long> smallest() const;
  std::optional<long> smallest_nonzero() const;
  long count() const;
  std::string str() const;
};

struct GammaSet {
  AbGroup group;
  std::vector<GammaVar> c;
  std::map<std::pair<int, int>, GammaVar> c2;

  bool empty() const;
  bool contains(const CocycleParams& p) const;
  bool all_c_nonzero() const;  // no member has some c_i = 0
  std::optional<CocycleParams> canonical() const;  // lexicographically smallest nonzero member
  mpz_class size() const;
  std::string str() const;
};

GammaSet solve_gamma(const CartanDatum& D);

/** Direct substitution into the defining congruences. */
bool in_gamma(const CartanDatum& D, const CocycleParams& c);

// linking and root vector parameters

using Linking = std::map<std::pair<int, int>, CycloNumber>;
using RootParams = std::map<Root, CycloNumber>;

Report validate_linking(const CartanDatum& D, const Linking& lambda);
Report validate_rootparams(const CartanDatum& D, const RootParams& mu);

/** Simple roots at which a nonzero root vector parameter is admissible. */
std::vector<int> admissible_mu_support(const CartanDatum& D);

/** u_alpha(mu) as a sparse combination of elements of G. */
std::vector<std::pair<Elt, CycloNumber>> u_alpha_terms(const CartanDatum& D, const RootParams& mu, const Root& alpha);
GroupAlgebraElt u_alpha(const CartanDatum& D, const RootParams& mu, const Root& alpha);

/** |G| prod_J N_J^{|R_J^+|}. */
mpz_class dimension(const CartanDatum& D);

// factories

struct FactoryOutput {
  CartanDatum datum;
  Linking lambda;
  RootParams mu;
  std::optional<CocycleParams> c;
  std::string recipe;
  std::map<std::string, long> args;  // numeric recipe parameters
};

FactoryOutput factory_cyclic(long m, const std::vector<long>& s, const std::vector<long>& r, IntMatrix A = {});
FactoryOutput factory_sl2_quasi(long N, long d, long c, std::optional<CycloNumber> lambda = std::nullopt);
FactoryOutput factory_rank2(const std::string& type, long m, long n, long d);
FactoryOutput factory_small_qgroup(const IntMatrix& A, long N, long p, long l, const std::vector<long>& k,
                                   const CycloNumber& lambda = CycloNumber(1));
FactoryOutput factory_series(const std::string& type, int n, long p, long q, long d);

/** Simple roots (0-based) that carry mu in the series construction. */
std::vector<int> series_mu_support(const std::string& type, int n);

}  // namespace qha
