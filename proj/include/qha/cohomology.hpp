#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qha/abgroup.hpp"

namespace qha {

/**
 * Parameters c_l, c_ij (i < j), c_rst (r < s < t) of a standard 3-cocycle.
 * Indices are 0-based; missing entries are zero.
 */
struct CocycleParams {
  AbGroup group;
  std::vector<long> c;
  std::map<std::pair<int, int>, long> c2;
  std::map<std::tuple<int, int, int>, long> c3;

  CocycleParams() = default;
  explicit CocycleParams(const AbGroup& G) : group(G), c(G.rank(), 0) {}

  long get2(int i, int j) const;
  long get3(int r, int s, int t) const;
  bool is_zero() const;
  void validate() const;  // range check; throws SchemaError
  std::string str() const;

  // every sequence in the canonical ranges, c_l fastest-varying last
  static std::vector<CocycleParams> enumerate(const AbGroup& G, bool with_triples = true);
};

bool operator==(const CocycleParams& a, const CocycleParams& b);

/**
 * Root-of-unity valued 3-cochain: value(a, b, c) = zeta_M^{exp(a, b, c)} on element indices.
 */
class Cochain3 {
 public:
  using Fn = std::function<long(long, long, long)>;

  Cochain3() = default;
  Cochain3(AbGroup G, long M, Fn fn);

  const AbGroup& group() const { return G_; }
  long conductor() const { return M_; }
  long exp(long a, long b, long c) const;
  CycloNumber operator()(const Elt& f, const Elt& g, const Elt& h) const;

  Cochain3 tabulate(long max_entries = 1L << 24) const;
  Cochain3 with_entry(long a, long b, long c, long e) const;  // mutated copy

  // set when built from standard parameters; mutation clears it
  std::optional<CocycleParams> params;

 private:
  AbGroup G_;
  long M_ = 1;
  Fn fn_;
  std::shared_ptr<const std::vector<long>> table_;
};

class Cochain2 {
 public:
  using Fn = std::function<long(long, long)>;

  Cochain2() = default;
  Cochain2(AbGroup G, long M, Fn fn) : G_(std::move(G)), M_(M), fn_(std::move(fn)) {}
  static Cochain2 from_table(const AbGroup& G, long M, std::vector<long> table);

  const AbGroup& group() const { return G_; }
  long conductor() const { return M_; }
  long exp(long a, long b) const { return mod_l(fn_(a, b), M_); }
  CycloNumber operator()(const Elt& f, const Elt& g) const;

 private:
  AbGroup G_;
  long M_ = 1;
  Fn fn_;
};

Cochain3 phi(const CocycleParams& c);
Cochain3 omega(const CocycleParams& c);
Cochain3 sigma(const Cochain3& f);

/** (dJ)(f,g,h) = J(g,h) J(f,gh) / (J(f,g) J(fg,h)). */
Cochain3 coboundary(const Cochain2& J);

/** Cochain from explicit values; throws NotRootOfUnityValued. */
Cochain3 cochain3_from_values(const AbGroup& G, const std::vector<CycloNumber>& values);

bool is_normalized(const Cochain3& f);
bool is_3cocycle(const Cochain3& f, long max_order = 256);

struct CoboundaryResult {
  bool coboundary = false;
  std::optional<Cochain2> witness;
  std::string method;  // "fast-path" or "smith"
};

CoboundaryResult is_coboundary(const Cochain3& f, bool allow_fast_path = true, long max_order = 32);

/**
 * Batch decision for standard cocycles on one group: reduces the coboundary
 * system once with the basis cocycles as right-hand sides, then answers each
 * parameter sequence by checking the resulting linear conditions.
 */
class CoboundaryDecider {
 public:
  explicit CoboundaryDecider(const AbGroup& G, long max_order = 32);
  bool is_coboundary(const CocycleParams& c) const;

 private:
  AbGroup G_;
  std::vector<CocycleParams> basis_;
  std::vector<std::pair<long, std::vector<std::vector<long>>>> constraints_;  // (p^k, rows)
  std::vector<long> coords(const CocycleParams& c) const;
};

bool is_abelian(const CocycleParams& c);

/** Conductor of the twist J_c on the doubled group. */
long jc_conductor(const AbGroup& G);
/** Exponent of zeta_{jc_conductor(G)} for J_c(f, g), f and g in the doubled group. */
long jc_exp(const CocycleParams& c, const Elt& f, const Elt& g);
CycloNumber jc_cochain(const CocycleParams& c, const Elt& f, const Elt& g);

}  // namespace qha
