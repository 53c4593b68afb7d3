#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qha/abgroup.hpp"

namespace qha {

/** Word in the letters X_0, X_1, ...; letter i is stored as the char i. */
using Word = std::string;

/** Degree first, then lexicographic with X_0 < X_1 < ... */
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using Poly = std::map<Word, CycloNumber, DegLex>;

void poly_add(Poly& p, const Word& w, const CycloNumber& c);
void poly_axpy(Poly& p, const CycloNumber& c, const Poly& q);  // p += c q
Poly poly_mul(const Poly& a, const Poly& b);
std::string word_str(const Word& w);
std::string poly_str(const Poly& p);

/**
 * Rewriting in the path algebra of X-words with a right idempotent 1_f.
 *
 * The pair (w, f) stands for w 1_f.  Letter i moves idempotents by
 * 1_f X_i = X_i 1_{f + shift_i}, so a subword ending before a suffix s of w
 * carries the idempotent f - shift(s).  Rules are kept per idempotent.
 */
class RewriteSystem {
 public:
  struct Rule {
    Word lead;
    long f = 0;
    Poly tail;  // lead -> tail
    bool active = true;
  };

  RewriteSystem() = default;
  RewriteSystem(AbGroup G, std::vector<long> shift, std::size_t letters);

  const AbGroup& group() const { return G_; }
  std::size_t letters() const { return letters_; }
  long shift(int letter) const { return shift_[letter]; }
  long left_idem(const Word& w, long f) const;  // f - shift(w)

  void add(const Poly& p, long f);
  // Knuth-Bendix completion, overlaps of length <= max_len only
  void complete(std::size_t max_len, std::size_t max_rules = 200000);
  // installs an already completed rule set
  void load(const std::vector<Rule>& rules);

  Poly reduce(Poly p, long f) const;
  bool reducible(const Word& w, long f) const;
  bool suffix_reducible(const Word& w, long f) const;

  std::size_t rule_count() const;
  std::vector<Rule> active_rules() const;

 private:
  struct Match {
    int rule = -1;
    std::size_t pos = 0;
  };
  Match find(const Word& w, long f, bool suffix_only) const;
  int insert(Poly p, long f);
  void overlaps(int a, int b, std::size_t max_len);

  AbGroup G_;
  std::vector<long> shift_;
  std::vector<long> neg_shift_;
  std::size_t letters_ = 0;
  std::vector<Rule> rules_;
  std::unordered_map<Word, std::vector<int>> index_;  // lead -> rule id per idempotent
  std::size_t max_lead_ = 0;
  std::vector<std::pair<Poly, long>> pending_;
  std::multimap<std::size_t, std::pair<int, std::pair<int, std::size_t>>> pairs_;  // len -> (a, (b, overlap))
};

}  // namespace qha
