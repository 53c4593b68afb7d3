#pragma once

#include <string>
#include <vector>

namespace qha {

using IntMatrix = std::vector<std::vector<long>>;
using Root = std::vector<long>;  // coordinates in the simple roots

struct DynkinComponent {
  std::vector<int> vertices;  // 0-based, increasing
  std::string type;           // "A3", "B2", "G2", "E6", ...
  char series = 'A';
  int rank = 0;
  std::vector<int> labeling;  // template position -> vertex
};

/** Checks the Cartan axioms and matches each connected component to a finite Dynkin type. */
std::vector<DynkinComponent> classify(const IntMatrix& A);

/** Minimal positive integers with d_i a_ij = d_j a_ji, per component. */
std::vector<long> symmetrizer(const IntMatrix& A);

/** s_i(beta) = beta - (sum_j a_ij beta_j) alpha_i. */
Root reflect(const IntMatrix& A, int i, const Root& beta);

std::vector<Root> positive_roots(const IntMatrix& A);

/** Reduced word for w_0: greedily append the smallest i with w(alpha_i) > 0.  0-based indices. */
std::vector<int> longest_word(const IntMatrix& A);

/** beta_l = s_{i_1} ... s_{i_{l-1}}(alpha_{i_l}). */
std::vector<Root> convex_order(const IntMatrix& A, const std::vector<int>& word);

long height(const Root& r);

struct RootSystem {
  IntMatrix matrix;
  std::vector<DynkinComponent> components;
  std::vector<Root> positive;  // in convex order
  std::vector<int> word;
  std::vector<int> component_of_root;  // index into components
};

RootSystem root_system(const IntMatrix& A);

}  // namespace qha
