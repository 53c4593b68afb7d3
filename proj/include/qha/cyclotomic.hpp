#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qha {

using Rational = mpq_class;

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long mod_l(long a, long m);  // representative in [0, m)

/**
 * Exact element of Q(zeta_M), zeta_M = exp(2 pi i / M).
 *
 * Terms are (exponent, coefficient) pairs on the power basis, kept sorted and
 * reduced to a canonical sub-basis, so two numbers of the same conductor are
 * equal iff their term lists are equal.
 */
class CycloNumber {
 public:
  using Term = std::pair<long, Rational>;

  CycloNumber() = default;
  CycloNumber(long v);  // NOLINT: integers embed implicitly
  explicit CycloNumber(const Rational& r, long M = 1);

  static CycloNumber root(long M, long k);

  long conductor() const { return M_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  CycloNumber embed(long M2) const;
  CycloNumber inv() const;

  // If the value is zeta_M^e returns e in [0, M).
  std::optional<long> root_exponent() const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inv(); }
  CycloNumber operator-() const;

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  // Multiply by zeta_M^k in place (cheap path for twisting scalars).
  CycloNumber times_root(long M, long k) const;

  std::string str() const;
  std::complex<double> approx() const;

 private:
  CycloNumber(long M, std::vector<Term> terms) : M_(M), terms_(std::move(terms)) {}
  static CycloNumber from_dense(long M, std::vector<std::pair<long, Rational>>& raw);

  long M_ = 1;
  std::vector<Term> terms_;
};

CycloNumber root_of_unity(long M, long k);

/** Integer coefficients of Phi_M, lowest degree first. */
std::vector<long> cyclotomic_polynomial(long M);

/** Remainder of the power-basis polynomial modulo Phi_M (dense, degree < phi(M)). */
std::vector<Rational> reduce_mod_cyclotomic(const CycloNumber& a);

long euler_phi(long M);

/** Element of Q(zeta_M) from an arbitrary, unnormalized term list. */
CycloNumber cyclo_from_terms(long M, const std::vector<std::pair<long, Rational>>& terms);

}  // namespace qha
