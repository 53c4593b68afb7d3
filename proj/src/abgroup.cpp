#include "qha/abgroup.hpp"

#include "qha/errors.hpp"

namespace qha {

AbGroup::AbGroup(std::vector<long> orders) : orders_(std::move(orders)) {
  for (long m : orders_)
    if (m < 1) throw GroupMismatch("generator order must be >= 1");
  radix_.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    radix_[i] = size_;
    exponent_ = lcm_l(exponent_, orders_[i]);
    if (__builtin_mul_overflow(size_, orders_[i], &size_)) huge_ = true;
  }
  if (huge_) size_ = -1;
  if (!huge_ && size_ <= 1024) {
    add_table_.resize(size_ * size_);
    for (long a = 0; a < size_; ++a)
      for (long b = 0; b < size_; ++b) add_table_[a * size_ + b] = index(add(element(a), element(b)));
  }
}

Elt AbGroup::generator(std::size_t i) const {
  Elt e = identity();
  e.at(i) = 1 % orders_[i];
  return e;
}

Elt AbGroup::reduce(Elt e) const {
  if (e.size() != orders_.size()) throw GroupMismatch("element has wrong length");
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_l(e[i], orders_[i]);
  return e;
}

Elt AbGroup::add(const Elt& a, const Elt& b) const {
  if (a.size() != orders_.size() || b.size() != orders_.size()) throw GroupMismatch("element has wrong length");
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_l(a[i] + b[i], orders_[i]);
  return r;
}

Elt AbGroup::sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

Elt AbGroup::neg(const Elt& a) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_l(-a[i], orders_[i]);
  return r;
}

Elt AbGroup::scale(const Elt& a, long k) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_l((a[i] % orders_[i]) * mod_l(k, orders_[i]), orders_[i]);
  return r;
}

bool AbGroup::contains(const Elt& e) const {
  if (e.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] >= orders_[i]) return false;
  return true;
}

long AbGroup::index(const Elt& e) const {
  if (e.size() != orders_.size()) throw GroupMismatch("element has wrong length");
  if (huge_) throw BudgetExceeded("group too large to index");
  long idx = 0;
  for (std::size_t i = 0; i < e.size(); ++i) idx += mod_l(e[i], orders_[i]) * radix_[i];
  return idx;
}

Elt AbGroup::element(long idx) const {
  Elt e(orders_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = idx % orders_[i];
    idx /= orders_[i];
  }
  return e;
}

long AbGroup::order() const {
  if (huge_) throw BudgetExceeded("group order does not fit in 64 bits");
  return size_;
}

mpz_class AbGroup::order_exact() const {
  mpz_class n = 1;
  for (long m : orders_) n *= m;
  return n;
}

std::vector<Elt> AbGroup::elements() const {
  order();
  std::vector<Elt> out;
  out.reserve(size_);
  for (long i = 0; i < size_; ++i) out.push_back(element(i));
  return out;
}

long AbGroup::add_idx(long a, long b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  return index(add(element(a), element(b)));
}

long AbGroup::neg_idx(long a) const { return index(neg(element(a))); }

long AbGroup::char_exp(const Elt& g, const Elt& h) const {
  if (g.size() != orders_.size() || h.size() != orders_.size()) throw GroupMismatch("element has wrong length");
  long e = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    e += mod_l(g[i] * h[i], orders_[i]) * (exponent_ / orders_[i]);
  return mod_l(e, exponent_);
}

CycloNumber AbGroup::character(const Elt& g, const Elt& h) const {
  return CycloNumber::root(exponent_, char_exp(g, h));
}

std::pair<long, long> reduce_with_defect(long x, long m) {
  long r = mod_l(x, m);
  return {r, r - x};
}

GroupAlgebraElt GroupAlgebraElt::basis(const AbGroup& G, const Elt& g, const CycloNumber& c) {
  GroupAlgebraElt a(G);
  a.add_term(G.index(g), c);
  return a;
}

CycloNumber GroupAlgebraElt::coeff(const Elt& g) const {
  auto it = coeffs_.find(G_.index(g));
  return it == coeffs_.end() ? CycloNumber(0) : it->second;
}

void GroupAlgebraElt::add_term(long idx, const CycloNumber& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = coeffs_.emplace(idx, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

GroupAlgebraElt& GroupAlgebraElt::operator+=(const GroupAlgebraElt& o) {
  if (G_ != o.G_) throw GroupMismatch("group algebra operands over different groups");
  for (auto& [k, c] : o.coeffs_) add_term(k, c);
  return *this;
}

GroupAlgebraElt& GroupAlgebraElt::operator-=(const GroupAlgebraElt& o) {
  if (G_ != o.G_) throw GroupMismatch("group algebra operands over different groups");
  for (auto& [k, c] : o.coeffs_) add_term(k, -c);
  return *this;
}

GroupAlgebraElt operator*(const GroupAlgebraElt& a, const GroupAlgebraElt& b) {
  if (a.G_ != b.G_) throw GroupMismatch("group algebra operands over different groups");
  GroupAlgebraElt r(a.G_);
  for (auto& [i, x] : a.coeffs_)
    for (auto& [j, y] : b.coeffs_) r.add_term(a.G_.add_idx(i, j), x * y);
  return r;
}

GroupAlgebraElt operator*(const CycloNumber& s, const GroupAlgebraElt& a) {
  GroupAlgebraElt r(a.G_);
  for (auto& [i, x] : a.coeffs_) r.add_term(i, s * x);
  return r;
}

bool operator==(const GroupAlgebraElt& a, const GroupAlgebraElt& b) {
  return a.G_ == b.G_ && a.coeffs_ == b.coeffs_;
}

CycloNumber character_of(const AbGroup& G, const Elt& g, const Elt& h) {
  if (!G.contains(g) || !G.contains(h)) throw GroupMismatch("element not in group");
  return G.character(g, h);
}

GroupAlgebraElt idempotent(const AbGroup& G, const Elt& g) {
  GroupAlgebraElt r(G);
  CycloNumber inv_order(Rational(1, G.order()));
  for (long h = 0; h < G.order(); ++h) r.add_term(h, inv_order * G.character(g, G.element(h)));
  return r;
}

DoubledGroup::DoubledGroup(const AbGroup& G) : base(G) {
  std::vector<long> sq;
  for (long m : G.orders()) sq.push_back(m * m);
  big = AbGroup(sq);
}

Elt DoubledGroup::iota(const Elt& g) const {
  Elt r = base.reduce(g);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= base.orders()[i];
  return r;
}

bool DoubledGroup::in_image(const Elt& e) const {
  Elt r = big.reduce(e);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] % base.orders()[i]) return false;
  return true;
}

Elt DoubledGroup::iota_inv(const Elt& e) const {
  if (!in_image(e)) throw DoesNotDescend("element is not in the image of G");
  Elt r = big.reduce(e);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] /= base.orders()[i];
  return r;
}

Elt DoubledGroup::project(const Elt& e) const {
  Elt r(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) r[i] = mod_l(e[i], base.orders()[i]);
  return r;
}

DoubledGroup double_group(const AbGroup& G) { return DoubledGroup(G); }

CycloNumber counit_idem(const AbGroup& G, const Elt& g) {
  return CycloNumber(G.reduce(g) == G.identity() ? 1 : 0);
}

}  // namespace qha
