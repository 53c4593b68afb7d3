#include "qha/linalg.hpp"

#include <numeric>

#include "qha/cyclotomic.hpp"

namespace qha {

namespace {

long inv_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, b = mod_l(a, m);
  while (b) {
    long q = g / b, t = g - q * b;
    g = b;
    b = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return mod_l(x, m);
}

long ipow(long p, int k) {
  long r = 1;
  while (k-- > 0) r *= p;
  return r;
}

inline long mulmod(long a, long b, long m) { return static_cast<long>(static_cast<__int128>(a) * b % m); }

}  // namespace

std::vector<std::pair<long, int>> prime_powers(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<Progression> solve_linear_congruence(long a, long b, long n) {
  a = mod_l(a, n);
  b = mod_l(b, n);
  long g = std::gcd(a, n);
  if (b % g) return std::nullopt;
  long n2 = n / g;
  if (n2 == 1) return Progression{0, 1};
  long x = mulmod(b / g, inv_mod(a / g, n2), n2);
  return Progression{x, n2};
}

std::optional<Progression> crt_merge(const Progression& a, const Progression& b) {
  long g = std::gcd(a.step, b.step);
  long diff = b.base - a.base;
  if (mod_l(diff, g)) return std::nullopt;
  long l = a.step / g * b.step;
  long m2 = b.step / g;
  long t = m2 == 1 ? 0 : mulmod(mod_l(diff / g, m2), inv_mod(a.step / g, m2), m2);
  long x = mod_l(static_cast<long>(a.base + static_cast<__int128>(a.step) * t % l), l);
  return Progression{x, l};
}

HowellReducer::HowellReducer(long p, int k, std::size_t n_unknown, std::size_t n_rhs)
    : p_(p), k_(k), mod_(ipow(p, k)), nu_(n_unknown), ncols_(n_unknown + n_rhs), pivots_(n_unknown),
      pivot_val_(n_unknown, 0) {}

long HowellReducer::valuation(long v) const {
  long a = 0;
  while (a < k_ && v % p_ == 0) {
    v /= p_;
    ++a;
  }
  return a;
}

void HowellReducer::push(std::vector<long>&& row) { queue_.push_back(std::move(row)); }

std::vector<std::vector<long>> HowellReducer::pivot_rows() const {
  std::vector<std::vector<long>> out;
  for (auto& r : pivots_)
    if (!r.empty()) out.push_back(r);
  return out;
}

void HowellReducer::install(std::vector<long> row, std::size_t col) {
  long v = row[col];
  long a = valuation(v);
  long pa = ipow(p_, static_cast<int>(a));
  long u = inv_mod(v / pa, mod_);
  for (std::size_t j = col; j < ncols_; ++j) row[j] = mulmod(row[j], u, mod_);
  // reduce the new row against later pivots
  for (std::size_t j = col + 1; j < nu_; ++j) {
    if (row[j] == 0 || pivots_[j].empty()) continue;
    long q = row[j] / pivot_val_[j];
    if (!q) continue;
    const auto& P = pivots_[j];
    for (std::size_t t = j; t < ncols_; ++t)
      if (P[t]) row[t] = mod_l(row[t] - mulmod(q, P[t], mod_), mod_);
  }
  // and clear this column from earlier pivot rows as far as the pivot allows
  for (std::size_t i = 0; i < col; ++i) {
    auto& R = pivots_[i];
    if (R.empty() || R[col] == 0) continue;
    long q = R[col] / pa;
    if (!q) continue;
    for (std::size_t t = col; t < ncols_; ++t)
      if (row[t]) R[t] = mod_l(R[t] - mulmod(q, row[t], mod_), mod_);
  }
  if (a > 0) {
    std::vector<long> aug(ncols_, 0);
    long f = ipow(p_, k_ - static_cast<int>(a));
    bool nz = false;
    for (std::size_t j = col; j < ncols_; ++j) {
      aug[j] = mulmod(row[j], f, mod_);
      nz |= aug[j] != 0;
    }
    if (nz) push(std::move(aug));
  }
  pivots_[col] = std::move(row);
  pivot_val_[col] = pa;
  ++n_pivots_;
}

void HowellReducer::add_row(std::vector<long> row) {
  for (auto& x : row) x = mod_l(x, mod_);
  push(std::move(row));
  while (!queue_.empty()) {
    std::vector<long> r = std::move(queue_.back());
    queue_.pop_back();
    bool placed = false;
    for (std::size_t col = 0; col < nu_ && !placed; ++col) {
      long v = r[col];
      if (v == 0) continue;
      if (pivots_[col].empty()) {
        install(std::move(r), col);
        placed = true;
        break;
      }
      long pa = pivot_val_[col];
      if (v % pa == 0) {
        long q = v / pa;
        const auto& P = pivots_[col];
        for (std::size_t t = col; t < ncols_; ++t)
          if (P[t]) r[t] = mod_l(r[t] - mulmod(q, P[t], mod_), mod_);
      } else {
        std::vector<long> old = std::move(pivots_[col]);
        pivots_[col].clear();
        --n_pivots_;
        install(std::move(r), col);
        push(std::move(old));
        placed = true;
      }
    }
    if (placed) continue;
    bool nz = false;
    for (std::size_t j = nu_; j < ncols_; ++j) nz |= r[j] != 0;
    if (nz) constraints_.emplace_back(r.begin() + static_cast<long>(nu_), r.end());
  }
}

namespace {

// Smith normal form solve over Z/p^k.
std::optional<std::vector<long>> smith_solve_pk(std::vector<std::vector<long>> A, std::vector<long> b,
                                                std::size_t cols, long p, int k) {
  long mod = ipow(p, k);
  std::size_t rows = A.size();
  for (auto& r : A)
    for (auto& x : r) x = mod_l(x, mod);
  for (auto& x : b) x = mod_l(x, mod);
  std::vector<std::vector<long>> V(cols, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) V[i][i] = 1;
  auto val = [&](long v) {
    int a = 0;
    while (a < k && v % p == 0) {
      v /= p;
      ++a;
    }
    return a;
  };
  std::vector<long> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    int best = k;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows && best > 0; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (A[i][j] == 0) continue;
        int a = val(A[i][j]);
        if (a < best) {
          best = a, bi = i, bj = j;
          if (a == 0) break;
        }
      }
    if (best == k) break;
    std::swap(A[t], A[bi]);
    std::swap(b[t], b[bi]);
    if (bj != t) {
      for (auto& r : A) std::swap(r[t], r[bj]);
      for (auto& r : V) std::swap(r[t], r[bj]);
    }
    long pa = ipow(p, best);
    long u = inv_mod(A[t][t] / pa, mod);
    for (std::size_t j = t; j < cols; ++j) A[t][j] = mulmod(A[t][j], u, mod);
    b[t] = mulmod(b[t], u, mod);
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (A[i][t] == 0) continue;
      long q = A[i][t] / pa;
      for (std::size_t j = t; j < cols; ++j)
        if (A[t][j]) A[i][j] = mod_l(A[i][j] - mulmod(q, A[t][j], mod), mod);
      b[i] = mod_l(b[i] - mulmod(q, b[t], mod), mod);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (A[t][j] == 0) continue;
      long q = A[t][j] / pa;
      A[t][j] = 0;
      for (std::size_t i = 0; i < cols; ++i)
        if (V[i][t]) V[i][j] = mod_l(V[i][j] - mulmod(q, V[i][t], mod), mod);
    }
    diag.push_back(pa);
  }
  std::vector<long> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < diag.size()) {
      if (b[i] % diag[i]) return std::nullopt;
      y[i] = b[i] / diag[i];
    } else if (b[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<long> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    long s = 0;
    for (std::size_t j = 0; j < cols; ++j)
      if (V[i][j] && y[j]) s = (s + mulmod(V[i][j], y[j], mod)) % mod;
    x[i] = s;
  }
  return x;
}

}  // namespace

std::optional<std::vector<long>> smith_solve(const std::vector<std::vector<long>>& A, const std::vector<long>& b,
                                             std::size_t cols, long n) {
  std::vector<long> x(cols, 0);
  std::vector<Progression> per(cols, Progression{0, 1});
  for (auto [p, k] : prime_powers(n)) {
    auto part = smith_solve_pk(A, b, cols, p, k);
    if (!part) return std::nullopt;
    long pk = ipow(p, k);
    for (std::size_t i = 0; i < cols; ++i) per[i] = *crt_merge(per[i], Progression{(*part)[i], pk});
  }
  for (std::size_t i = 0; i < cols; ++i) x[i] = mod_l(per[i].base, n);
  return x;
}

}  // namespace qha
