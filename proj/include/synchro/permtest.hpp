#pragma once

// Permutation test of independence between the two coordinates of a trial
// sample. The second coordinates are reassigned across trials; the observed
// statistic joins the B Monte-Carlo null values, the threshold is the
// ceil((1-alpha)(B+1))-th order statistic of that pool, and the test rejects
// on strict exceedance. p = (1 + #{null >= observed}) / (B + 1), so the
// smallest reachable p-value is 1/(B+1).

#include <cstdint>
#include <vector>

#include "synchro/rng.hpp"
#include "synchro/spike.hpp"

namespace synchro {

struct TestResult {
  double statistic = 0.0;  // observed C_n
  double quantile = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::vector<double> null_values;  // filled when keep_null
};

// 1-based rank of the threshold inside the pool of B+1 values
int quantile_rank(double alpha, int B);

// B permutation draws; permutation k comes from rng.child(k), so results do
// not depend on evaluation order
TestResult permutation_test(const Sample& s, double delta, double alpha, int B,
                            const Rng& rng, bool keep_null = false);

// all n! permutation statistics, for cross-checking the MC path (n <= 8)
std::vector<double> exact_null(const Sample& s, double delta);

// exact variant of the test using the full enumeration instead of MC draws
TestResult exact_permutation_test(const Sample& s, double delta, double alpha);

}  // namespace synchro
