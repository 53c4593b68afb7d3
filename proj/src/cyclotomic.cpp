#include "qha/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qha/errors.hpp"

namespace qha {

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return (a == 0 || b == 0) ? 0 : a / std::gcd(a, b) * b; }
long mod_l(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

namespace {

struct Conductor {
  long M = 1;
  long t = 1;  // M / rad(M)
  std::vector<long> primes;
  std::vector<long> digit_mult;  // inverse of rad/p modulo p
};

long inverse_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = mod_l(a, m);
  long b = a1;
  while (b) {
    long q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return mod_l(x, m);
}

const Conductor& conductor_info(long M) {
  static std::mutex mu;
  static std::unordered_map<long, Conductor> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  Conductor c;
  c.M = M;
  long n = M, rad = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      c.primes.push_back(p);
      rad *= p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    c.primes.push_back(n);
    rad *= n;
  }
  c.t = M / rad;
  for (long p : c.primes) c.digit_mult.push_back(p == 1 ? 0 : inverse_mod((rad / p) % p, p));
  return cache.emplace(M, std::move(c)).first->second;
}

// CRT digit of exponent e for the k-th prime; digit p-1 marks a non-basis power.
inline long digit(const Conductor& c, std::size_t k, long e) {
  long p = c.primes[k];
  return ((e / c.t) % p) * c.digit_mult[k] % p;
}

std::vector<CycloNumber::Term> normalize(const Conductor& c, std::map<long, Rational>& acc) {
  for (std::size_t k = 0; k < c.primes.size(); ++k) {
    long p = c.primes[k];
    long step = c.M / p;
    std::vector<std::pair<long, Rational>> bad;
    for (auto& [e, q] : acc)
      if (q != 0 && digit(c, k, e) == p - 1) bad.emplace_back(e, q);
    for (auto& [e, q] : bad) {
      acc.erase(e);
      for (long j = 1; j < p; ++j) acc[(e + j * step) % c.M] -= q;
    }
  }
  std::vector<CycloNumber::Term> out;
  out.reserve(acc.size());
  for (auto& [e, q] : acc)
    if (q != 0) out.emplace_back(e, q);
  return out;
}

}  // namespace

CycloNumber::CycloNumber(long v) : M_(1) {
  if (v != 0) terms_.emplace_back(0, Rational(v));
}

CycloNumber::CycloNumber(const Rational& r, long M) : M_(M) {
  if (M < 1) throw Error("InvalidConductor", std::to_string(M));
  if (r != 0) {
    terms_.emplace_back(0, r);
    terms_.back().second.canonicalize();
  }
}

CycloNumber CycloNumber::from_dense(long M, std::vector<std::pair<long, Rational>>& raw) {
  std::map<long, Rational> acc;
  for (auto& [e, q] : raw) acc[mod_l(e, M)] += q;
  return CycloNumber(M, normalize(conductor_info(M), acc));
}

CycloNumber cyclo_from_terms(long M, const std::vector<std::pair<long, Rational>>& terms) {
  if (M < 1) throw Error("InvalidConductor", std::to_string(M));
  CycloNumber r(Rational(0), M);
  for (auto& [e, q] : terms) r += CycloNumber(q, 1) * CycloNumber::root(M, e);
  return r;
}

CycloNumber CycloNumber::root(long M, long k) {
  if (M < 1) throw Error("InvalidConductor", std::to_string(M));
  std::map<long, Rational> acc;
  acc[mod_l(k, M)] = 1;
  return CycloNumber(M, normalize(conductor_info(M), acc));
}

CycloNumber root_of_unity(long M, long k) { return CycloNumber::root(M, k); }

bool CycloNumber::is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }

CycloNumber CycloNumber::embed(long M2) const {
  if (M2 == M_) return *this;
  if (M2 % M_ != 0) throw Error("InvalidConductor", "cannot embed conductor " + std::to_string(M_) + " into " + std::to_string(M2));
  long f = M2 / M_;
  std::map<long, Rational> acc;
  for (auto& [e, q] : terms_) acc[e * f] += q;
  return CycloNumber(M2, normalize(conductor_info(M2), acc));
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  long L = lcm_l(M_, o.M_);
  CycloNumber a = embed(L), b = o.embed(L);
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
      out.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
      out.push_back(b.terms_[j++]);
    } else {
      Rational s = a.terms_[i].second + b.terms_[j].second;
      if (s != 0) out.emplace_back(a.terms_[i].first, s);
      ++i, ++j;
    }
  }
  M_ = L;
  terms_ = std::move(out);
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) { return *this += -o; }

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (a.is_zero() || b.is_zero()) return CycloNumber(Rational(0), lcm_l(a.M_, b.M_));
  long L = lcm_l(a.M_, b.M_);
  if (a.M_ == 1 && a.terms_.size() == 1) {
    CycloNumber r = b.embed(L);
    for (auto& t : r.terms_) t.second *= a.terms_[0].second;
    return r;
  }
  if (b.M_ == 1 && b.terms_.size() == 1) return b * a;
  long fa = L / a.M_, fb = L / b.M_;
  std::map<long, Rational> acc;
  for (auto& [ea, qa] : a.terms_)
    for (auto& [eb, qb] : b.terms_) acc[(ea * fa + eb * fb) % L] += qa * qb;
  return CycloNumber(L, normalize(conductor_info(L), acc));
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) { return *this = *this * o; }

CycloNumber CycloNumber::times_root(long M, long k) const { return *this * CycloNumber::root(M, k); }

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.M_ == b.M_) return a.terms_ == b.terms_;
  long L = lcm_l(a.M_, b.M_);
  return a.embed(L).terms_ == b.embed(L).terms_;
}

std::optional<long> CycloNumber::root_exponent() const {
  if (terms_.empty()) return std::nullopt;
  const Conductor& c = conductor_info(M_);
  long e0 = terms_[0].first;
  std::size_t k = c.primes.size();
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    long e = e0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      long p = c.primes[i];
      long w = digit(c, i, e);
      e = mod_l(e + (p - 1 - w) * (M_ / p), M_);
    }
    if (CycloNumber::root(M_, e) == *this) return e;
  }
  return std::nullopt;
}

namespace {

// Smallest conductor divisor on which all exponents live.
CycloNumber shrink(const CycloNumber& a) {
  long g = a.conductor();
  for (auto& [e, q] : a.terms()) g = gcd_l(g, e);
  if (g <= 1) return a;
  std::vector<std::pair<long, Rational>> t;
  for (auto& [e, q] : a.terms()) t.emplace_back(e / g, q);
  return cyclo_from_terms(a.conductor() / g, t);
}

}  // namespace

CycloNumber CycloNumber::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(M_) + ")");
  if (terms_.size() == 1) {
    CycloNumber r = CycloNumber::root(M_, -terms_[0].first);
    for (auto& t : r.terms_) t.second /= terms_[0].second;
    return r;
  }
  if (auto e = root_exponent()) return CycloNumber::root(M_, -*e);
  CycloNumber s = shrink(*this);
  long M = s.M_;
  // Solve s * y = 1 in the dense basis 1, x, ..., x^{phi-1} modulo Phi_M.
  std::vector<long> phi = cyclotomic_polynomial(M);
  std::size_t n = phi.size() - 1;
  auto reduce = [&](std::vector<Rational> v) {
    for (std::size_t d = v.size(); d-- > n;) {
      if (v[d] == 0) continue;
      Rational c = v[d];
      for (std::size_t i = 0; i <= n; ++i) v[d - n + i] -= c * phi[i];
    }
    v.resize(n);
    return v;
  };
  std::vector<Rational> sd = reduce_mod_cyclotomic(s);
  std::vector<std::vector<Rational>> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> prod(2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) prod[i + j] += sd[i];
    cols[j] = reduce(prod);
  }
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A[i][j] = cols[j][i];
    A[i][n] = (i == 0) ? 1 : 0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw DivisionByZero("singular multiplication matrix");
    std::swap(A[piv], A[col]);
    Rational d = A[col][col];
    for (auto& x : A[col]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (std::size_t k = col; k <= n; ++k) A[r][k] -= f * A[col][k];
    }
  }
  std::vector<std::pair<long, Rational>> t;
  for (std::size_t i = 0; i < n; ++i)
    if (A[i][n] != 0) t.emplace_back(static_cast<long>(i), A[i][n]);
  return cyclo_from_terms(M, t).embed(M_);
}

std::string CycloNumber::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, q] : terms_) {
    if (!first) os << (q > 0 ? " + " : " - ");
    else if (q < 0) os << "-";
    first = false;
    Rational a = abs(q);
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "z" << M_ << "^" << e;
    }
  }
  return os.str();
}

std::complex<double> CycloNumber::approx() const {
  std::complex<double> s = 0;
  for (auto& [e, q] : terms_) s += q.get_d() * std::polar(1.0, 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(M_));
  return s;
}

std::vector<long> cyclotomic_polynomial(long M) {
  static std::mutex mu;
  static std::map<long, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  if (M < 1) throw Error("InvalidConductor", std::to_string(M));
  std::vector<long> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (long d = 1; d < M; ++d) {
    if (M % d) continue;
    std::vector<long> den = cyclotomic_polynomial(d);
    // exact division by a monic polynomial
    std::vector<long> quo(num.size() - den.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
      long c = num[k + den.size() - 1];
      quo[k] = c;
      for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
    }
    num = quo;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[M] = num;
  return num;
}

long euler_phi(long M) { return static_cast<long>(cyclotomic_polynomial(M).size()) - 1; }

std::vector<Rational> reduce_mod_cyclotomic(const CycloNumber& a) {
  long M = a.conductor();
  std::vector<long> phi = cyclotomic_polynomial(M);
  std::size_t n = phi.size() - 1;
  std::vector<Rational> v(std::max<std::size_t>(M, n), Rational(0));
  for (auto& [e, q] : a.terms()) v[e] += q;
  for (std::size_t d = v.size(); d-- > n;) {
    if (v[d] == 0) continue;
    Rational c = v[d];
    for (std::size_t i = 0; i <= n; ++i) v[d - n + i] -= c * phi[i];
  }
  v.resize(n);
  return v;
}

}  // namespace qha
