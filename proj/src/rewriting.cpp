#include "qha/rewriting.hpp"

#include <algorithm>
#include <sstream>

#include "qha/errors.hpp"

namespace qha {

void poly_add(Poly& p, const Word& w, const CycloNumber& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

void poly_axpy(Poly& p, const CycloNumber& c, const Poly& q) {
  for (auto& [w, x] : q) poly_add(p, w, c * x);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [u, x] : a)
    for (auto& [v, y] : b) poly_add(r, u + v, x * y);
  return r;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    s += "X" + std::to_string(static_cast<int>(w[i]));
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")*" << word_str(it->first);
  }
  return os.str();
}

RewriteSystem::RewriteSystem(AbGroup G, std::vector<long> shift, std::size_t letters)
    : G_(std::move(G)), shift_(std::move(shift)), letters_(letters) {
  if (shift_.size() != letters_) throw DimensionMismatch("one idempotent shift per letter");
  for (long s : shift_) neg_shift_.push_back(G_.neg_idx(s));
}

long RewriteSystem::left_idem(const Word& w, long f) const {
  for (char x : w) f = G_.add_idx(f, neg_shift_[static_cast<unsigned char>(x)]);
  return f;
}

RewriteSystem::Match RewriteSystem::find(const Word& w, long f, bool suffix_only) const {
  std::size_t n = w.size();
  std::vector<long> idem(n + 1);
  idem[n] = f;
  for (std::size_t j = n; j-- > 0;) idem[j] = G_.add_idx(idem[j + 1], neg_shift_[static_cast<unsigned char>(w[j])]);
  std::size_t j0 = suffix_only ? n : 1;
  if (auto it = index_.find(Word()); it != index_.end())
    for (std::size_t j = suffix_only ? n : 0; j <= n; ++j)
      if (int r = it->second[idem[j]]; r >= 0) return {r, j};
  Word key;
  for (std::size_t j = j0; j <= n; ++j) {
    std::size_t top = std::min(max_lead_, j);
    for (std::size_t len = 1; len <= top; ++len) {
      key.assign(w, j - len, len);
      auto it = index_.find(key);
      if (it == index_.end()) continue;
      int r = it->second[idem[j]];
      if (r >= 0) return {r, j - len};
    }
  }
  return {};
}

bool RewriteSystem::reducible(const Word& w, long f) const { return find(w, f, false).rule >= 0; }
bool RewriteSystem::suffix_reducible(const Word& w, long f) const { return find(w, f, true).rule >= 0; }

Poly RewriteSystem::reduce(Poly p, long f) const {
  Poly out;
  while (!p.empty()) {
    auto it = std::prev(p.end());
    Word w = it->first;
    CycloNumber c = std::move(it->second);
    p.erase(it);
    Match m = find(w, f, false);
    if (m.rule < 0) {
      out.emplace(std::move(w), std::move(c));
      continue;
    }
    const Rule& r = rules_[m.rule];
    Word pre = w.substr(0, m.pos), post = w.substr(m.pos + r.lead.size());
    for (auto& [t, x] : r.tail) poly_add(p, pre + t + post, c * x);
  }
  return out;
}

void RewriteSystem::add(const Poly& p, long f) { pending_.emplace_back(p, f); }

int RewriteSystem::insert(Poly p, long f) {
  p = reduce(std::move(p), f);
  if (p.empty()) return -1;
  auto top = std::prev(p.end());
  Rule rule;
  rule.lead = top->first;
  rule.f = f;
  CycloNumber lc = top->second.inv();
  p.erase(top);
  for (auto& [w, x] : p) rule.tail.emplace(w, -(x * lc));
  int id = static_cast<int>(rules_.size());

  // rules whose lead contains the new lead are rewritten
  std::size_t len = rule.lead.size();
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    Rule& o = rules_[k];
    if (!o.active || o.lead.size() < len) continue;
    for (std::size_t pos = o.lead.find(rule.lead); pos != Word::npos; pos = o.lead.find(rule.lead, pos + 1)) {
      if (left_idem(o.lead.substr(pos + len), o.f) != f) continue;
      o.active = false;
      index_[o.lead][o.f] = -1;
      Poly back = o.tail;
      for (auto& [w, x] : back) x = -x;
      back.emplace(o.lead, CycloNumber(1));
      pending_.emplace_back(std::move(back), o.f);
      break;
    }
  }

  auto& slot = index_[rule.lead];
  if (slot.empty()) slot.assign(G_.order(), -1);
  slot[f] = id;
  max_lead_ = std::max(max_lead_, len);
  rules_.push_back(std::move(rule));
  return id;
}

void RewriteSystem::overlaps(int a, int b, std::size_t max_len) {
  const Rule& A = rules_[a];
  const Rule& B = rules_[b];
  std::size_t la = A.lead.size(), lb = B.lead.size();
  for (std::size_t k = 1; k < std::min(la, lb); ++k) {
    if (la + lb - k > max_len) continue;
    if (A.lead.compare(la - k, k, B.lead, 0, k) != 0) continue;
    if (left_idem(B.lead.substr(k), B.f) != A.f) continue;
    pairs_.emplace(la + lb - k, std::make_pair(a, std::make_pair(b, k)));
  }
}

void RewriteSystem::complete(std::size_t max_len, std::size_t max_rules) {
  for (;;) {
    while (!pending_.empty()) {
      auto [p, f] = std::move(pending_.back());
      pending_.pop_back();
      int id = insert(std::move(p), f);
      if (id < 0) continue;
      if (rules_.size() > max_rules) throw BudgetExceeded("completion produced more than " + std::to_string(max_rules) + " rules");
      for (int k = 0; k <= id; ++k) {
        if (!rules_[k].active) continue;
        overlaps(id, k, max_len);
        if (k != id) overlaps(k, id, max_len);
      }
    }
    if (pairs_.empty()) break;
    auto it = pairs_.begin();
    auto [a, bk] = it->second;
    auto [b, k] = bk;
    pairs_.erase(it);
    const Rule& A = rules_[a];
    const Rule& B = rules_[b];
    if (!A.active || !B.active) continue;
    Word c = B.lead.substr(k), pre = A.lead.substr(0, A.lead.size() - k);
    Poly s;
    for (auto& [t, x] : A.tail) poly_add(s, t + c, x);
    for (auto& [t, x] : B.tail) poly_add(s, pre + t, -x);
    pending_.emplace_back(std::move(s), B.f);
  }
}

void RewriteSystem::load(const std::vector<Rule>& rules) {
  for (const Rule& r : rules) {
    if (r.f < 0 || r.f >= G_.order()) throw SchemaError("cached rule: idempotent out of range");
    for (char x : r.lead)
      if (static_cast<unsigned char>(x) >= letters_) throw SchemaError("cached rule: letter out of range");
    auto& slot = index_[r.lead];
    if (slot.empty()) slot.assign(G_.order(), -1);
    slot[r.f] = static_cast<int>(rules_.size());
    max_lead_ = std::max(max_lead_, r.lead.size());
    rules_.push_back(r);
    rules_.back().active = true;
  }
}

std::size_t RewriteSystem::rule_count() const {
  std::size_t n = 0;
  for (auto& r : rules_) n += r.active;
  return n;
}

std::vector<RewriteSystem::Rule> RewriteSystem::active_rules() const {
  std::vector<Rule> out;
  for (auto& r : rules_)
    if (r.active) out.push_back(r);
  return out;
}

}  // namespace qha
