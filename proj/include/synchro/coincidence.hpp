#pragma once

// Coincidence counting and the two dependence statistics built on it.
//
// phi(x1, x2) counts pairs (u, v), u in x1, v in x2, with |u - v| <= delta
// (boundary inclusive, exact comparison). For a sample of n trials:
//   C_n = (1/n) * sum_i phi(x1_i, x2_i)
//   T_n = (1/(n(n-1))) * sum_{i != j} [phi(x1_i, x2_i) - phi(x1_i, x2_j)]
// and the two are linked by the exact identity
//   T_n = n/(n-1) * C_n - S / (n(n-1)),  S = sum_{i,j} phi(x1_i, x2_j).
// S is invariant under permutations of the second coordinate, which is what
// makes tests based on C_n and on T_n reject identically.

#include <cstdint>
#include <vector>

#include "synchro/spike.hpp"

namespace synchro {

// pair count via a single sweep with two monotone cursors; O(|x1| + |x2| + matches)
long long coincidence_count(const Train& x1, const Train& x2, double delta);

// C_n
double mean_coincidence(const Sample& s, double delta);

// kernel of the pair statistic: phi(a.x1, a.x2) - phi(a.x1, b.x2)
double f_phi(const TrialPair& a, const TrialPair& b, double delta);

// M[i][j] = phi(x1_i, x2_j); the n x n table every permutation statistic reads
std::vector<std::vector<long long>> phi_matrix(const Sample& s, double delta);

long long cross_sum(const std::vector<std::vector<long long>>& m);

// T_n (n >= 2)
double t_statistic(const Sample& s, double delta);
double t_statistic_from_matrix(const std::vector<std::vector<long long>>& m);

// C_n of the permuted sample (x1_i paired with x2_{pi(i)})
double statistic_for_permutation(const std::vector<std::vector<long long>>& m,
                                 const std::vector<std::uint32_t>& pi);

}  // namespace synchro
