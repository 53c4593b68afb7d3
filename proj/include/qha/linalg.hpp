#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qha {

/** Prime-power factorization n = prod p^k, as (p, k) pairs in increasing p. */
std::vector<std::pair<long, int>> prime_powers(long n);

/** Solve a x = b (mod n) for one congruence.  Empty if gcd(a, n) does not divide b. */
struct Progression {
  long base = 0;  // smallest solution in [0, step)
  long step = 1;  // solutions are base + k*step
};
std::optional<Progression> solve_linear_congruence(long a, long b, long n);

/** Intersect x = b1 (mod n1) with x = b2 (mod n2); generalized CRT, moduli need not be coprime. */
std::optional<Progression> crt_merge(const Progression& a, const Progression& b);

/**
 * Incremental Howell-form reduction over Z/p^k.
 *
 * Columns [0, n_unknown) carry the coefficients of the unknowns; the remaining
 * columns are right-hand sides.  Rows whose unknown part reduces to zero are
 * kept separately: their right-hand parts span every linear condition a
 * right-hand side must satisfy for the system to be solvable.
 */
class HowellReducer {
 public:
  HowellReducer(long p, int k, std::size_t n_unknown, std::size_t n_rhs);

  void add_row(std::vector<long> row);

  long modulus() const { return mod_; }
  std::size_t rank() const { return n_pivots_; }
  const std::vector<std::vector<long>>& constraints() const { return constraints_; }
  std::vector<std::vector<long>> pivot_rows() const;

 private:
  long valuation(long v) const;
  void install(std::vector<long> row, std::size_t col);
  void push(std::vector<long>&& row);

  long p_;
  int k_;
  long mod_;
  std::size_t nu_, ncols_;
  std::vector<std::vector<long>> pivots_;  // indexed by column, empty when absent
  std::vector<long> pivot_val_;
  std::size_t n_pivots_ = 0;
  std::vector<std::vector<long>> constraints_;
  std::vector<std::vector<long>> queue_;
};

/**
 * Solve A x = b over Z/n by Smith normal form (per prime power, recombined by CRT).
 * A is row-major with `cols` columns.  Returns one solution, or nullopt.
 */
std::optional<std::vector<long>> smith_solve(const std::vector<std::vector<long>>& A, const std::vector<long>& b,
                                             std::size_t cols, long n);

}  // namespace qha
