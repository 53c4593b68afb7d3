#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qha/cyclotomic.hpp"

namespace qha {

using Elt = std::vector<long>;

/**
 * Finite abelian group Z_{m_1} x ... x Z_{m_n} with a fixed generator list.
 *
 * Elements are exponent vectors, always reduced into [0, m_i).  Every element
 * also has a mixed-radix index in [0, |G|) with the first generator fastest.
 */
class AbGroup {
 public:
  AbGroup() = default;
  explicit AbGroup(std::vector<long> orders);

  const std::vector<long>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  long order() const;  // throws BudgetExceeded when the order does not fit in a long
  mpz_class order_exact() const;
  long exponent() const { return exponent_; }  // lcm of the m_i

  Elt identity() const { return Elt(orders_.size(), 0); }
  Elt generator(std::size_t i) const;
  Elt reduce(Elt e) const;
  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt scale(const Elt& a, long k) const;
  bool contains(const Elt& e) const;

  long index(const Elt& e) const;
  Elt element(long idx) const;
  std::vector<Elt> elements() const;

  // index arithmetic, table driven for small groups
  long add_idx(long a, long b) const;
  long neg_idx(long a) const;

  // chi_g(h) as an exponent of zeta_{exponent()}
  long char_exp(const Elt& g, const Elt& h) const;
  CycloNumber character(const Elt& g, const Elt& h) const;

  bool operator==(const AbGroup& o) const { return orders_ == o.orders_; }
  bool operator!=(const AbGroup& o) const { return !(*this == o); }

 private:
  std::vector<long> orders_;
  std::vector<long> radix_;
  long size_ = 1;
  long exponent_ = 1;
  bool huge_ = false;
  std::vector<long> add_table_;
};

/** (x mod m, x' - x) where x' is the remainder of x; the defect is a multiple of m. */
std::pair<long, long> reduce_with_defect(long x, long m);

/** Element of the group algebra kG with cyclotomic coefficients, keyed by element index. */
class GroupAlgebraElt {
 public:
  GroupAlgebraElt() = default;
  explicit GroupAlgebraElt(const AbGroup& G) : G_(G) {}

  static GroupAlgebraElt basis(const AbGroup& G, const Elt& g, const CycloNumber& c = CycloNumber(1));

  const AbGroup& group() const { return G_; }
  const std::map<long, CycloNumber>& coeffs() const { return coeffs_; }
  CycloNumber coeff(const Elt& g) const;
  void add_term(long idx, const CycloNumber& c);
  bool is_zero() const { return coeffs_.empty(); }

  GroupAlgebraElt& operator+=(const GroupAlgebraElt& o);
  GroupAlgebraElt& operator-=(const GroupAlgebraElt& o);
  friend GroupAlgebraElt operator+(GroupAlgebraElt a, const GroupAlgebraElt& b) { return a += b; }
  friend GroupAlgebraElt operator-(GroupAlgebraElt a, const GroupAlgebraElt& b) { return a -= b; }
  friend GroupAlgebraElt operator*(const GroupAlgebraElt& a, const GroupAlgebraElt& b);
  friend GroupAlgebraElt operator*(const CycloNumber& s, const GroupAlgebraElt& a);
  friend bool operator==(const GroupAlgebraElt& a, const GroupAlgebraElt& b);

 private:
  AbGroup G_;
  std::map<long, CycloNumber> coeffs_;
};

CycloNumber character_of(const AbGroup& G, const Elt& g, const Elt& h);

/** 1_g = (1/|G|) sum_h chi_g(h) h.  Then 1_g h = chi_g(h)^{-1} 1_g. */
GroupAlgebraElt idempotent(const AbGroup& G, const Elt& g);

struct DoubledGroup {
  AbGroup base;  // G
  AbGroup big;   // orders m_i^2

  explicit DoubledGroup(const AbGroup& G);
  Elt iota(const Elt& g) const;           // g_i -> big generator ^ m_i
  bool in_image(const Elt& big_elt) const;
  Elt iota_inv(const Elt& big_elt) const;  // throws DoesNotDescend if not in the image
  Elt project(const Elt& big_elt) const;   // exponents mod m_i
};

DoubledGroup double_group(const AbGroup& G);

/** Counit of the idempotent 1_g. */
CycloNumber counit_idem(const AbGroup& G, const Elt& g);

}  // namespace qha
