#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "synchro/coincidence.hpp"
#include "synchro/permtest.hpp"
#include "synchro/rng.hpp"
#include "synchro/simulate.hpp"

using namespace synchro;

namespace {

Sample tiny_dependent_sample(int n, Rng rng, double T = 2.0) {
  // identical trains per trial: maximally coincident
  Model m = Model::make_identical(10.0, T);
  return iid_sample(m, n, rng);
}

Sample tiny_independent_sample(int n, Rng rng, double T = 2.0) {
  JitterParams p;
  p.lambda1 = 10.0;
  p.lambda2 = 10.0;
  p.eta = 0.0;
  p.T = T;
  p.noise = NoiseSpec::uniform_noise(-0.1, 0.1);
  return iid_sample(Model::make_jitter(p), n, rng);
}

}  // namespace

TEST_CASE("quantile_rank implements the ceil((1-alpha)(B+1)) convention") {
  CHECK(quantile_rank(0.05, 19) == 19);    // ceil(0.95 * 20)
  CHECK(quantile_rank(0.05, 99) == 95);    // ceil(0.95 * 100)
  CHECK(quantile_rank(0.05, 500) == 476);  // ceil(0.95 * 501) = 476
  CHECK(quantile_rank(0.05, 5000) == 4751);
  CHECK(quantile_rank(0.5, 1) == 1);
  // the level is a probability strictly inside (0,1)
  CHECK_THROWS_AS(quantile_rank(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(quantile_rank(1.0, 10), std::invalid_argument);
}

TEST_CASE("p-value floor is 1/(B+1) and is attained on extreme data") {
  const int B = 99;
  const Sample s = tiny_dependent_sample(12, Rng(1).child(0));
  const TestResult r = permutation_test(s, 0.01, 0.05, B, Rng(1).child(1));
  CHECK(r.p_value >= doctest::Approx(1.0 / (B + 1)));
  // identical trains: observed C_n beats essentially every permutation
  CHECK(r.p_value == doctest::Approx(1.0 / (B + 1)));
  CHECK(r.reject);
}

TEST_CASE("test accepts obviously null data most of the time") {
  int rejects = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const Sample s = tiny_independent_sample(10, Rng(100 + rep).child(0));
    const TestResult r =
        permutation_test(s, 0.1, 0.05, 199, Rng(100 + rep).child(1));
    rejects += r.reject ? 1 : 0;
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value <= 1.0);
  }
  // 40 level-0.05 tests: P(more than 9 rejections) is astronomically small
  CHECK(rejects <= 9);
}

TEST_CASE("same seed reproduces the test verbatim") {
  const Sample s = tiny_dependent_sample(8, Rng(7).child(0));
  const TestResult r1 = permutation_test(s, 0.05, 0.05, 200, Rng(9).child(1), true);
  const TestResult r2 = permutation_test(s, 0.05, 0.05, 200, Rng(9).child(1), true);
  CHECK(r1.statistic == r2.statistic);
  CHECK(r1.quantile == r2.quantile);
  CHECK(r1.p_value == r2.p_value);
  REQUIRE(r1.null_values.size() == r2.null_values.size());
  for (std::size_t i = 0; i < r1.null_values.size(); ++i)
    CHECK(r1.null_values[i] == r2.null_values[i]);
}

TEST_CASE("null_values are returned only on request, and there are B of them") {
  const Sample s = tiny_dependent_sample(6, Rng(3).child(0));
  const TestResult quiet = permutation_test(s, 0.05, 0.05, 57, Rng(4).child(1));
  CHECK(quiet.null_values.empty());
  const TestResult loud =
      permutation_test(s, 0.05, 0.05, 57, Rng(4).child(1), true);
  CHECK(loud.null_values.size() == 57);
}

TEST_CASE("argument validation") {
  Sample one(1);
  one[0].x1 = {0.5};
  one[0].x2 = {0.6};
  CHECK_THROWS_AS(permutation_test(one, 0.1, 0.05, 10, Rng(1)),
                  std::invalid_argument);
  Sample two = tiny_dependent_sample(2, Rng(5).child(0));
  CHECK_THROWS_AS(permutation_test(two, 0.1, 0.05, 0, Rng(1)),
                  std::invalid_argument);
}

TEST_CASE("exact_null enumerates n! statistics whose mean ties to the cross sum") {
  const int n = 5;
  const Sample s = tiny_dependent_sample(n, Rng(11).child(0));
  const std::vector<double> null = exact_null(s, 0.1);
  CHECK(null.size() == 120);
  // average of C_n over all permutations = cross_sum / n^2... checked the
  // slow way: each matrix entry appears in (n-1)! permutations
  const auto M = phi_matrix(s, 0.1);
  double avg = 0;
  for (double v : null) avg += v;
  avg /= static_cast<double>(null.size());
  const double want = static_cast<double>(cross_sum(M)) / (n * n);
  CHECK(avg == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("exact test and MC test agree on clear-cut data") {
  const Sample dep = tiny_dependent_sample(6, Rng(21).child(0));
  const TestResult ex = exact_permutation_test(dep, 0.05, 0.05);
  const TestResult mc = permutation_test(dep, 0.05, 0.05, 999, Rng(22).child(1));
  CHECK(ex.reject == mc.reject);
  CHECK(ex.reject);

  const Sample ind = tiny_independent_sample(6, Rng(23).child(0));
  const TestResult ex2 = exact_permutation_test(ind, 0.1, 0.05);
  const TestResult mc2 = permutation_test(ind, 0.1, 0.05, 999, Rng(24).child(1));
  CHECK(ex2.reject == mc2.reject);
}

TEST_CASE("exact test p-value equals the enumerated tail fraction") {
  const Sample s = tiny_independent_sample(5, Rng(31).child(0));
  const double obs = mean_coincidence(s, 0.1);
  const std::vector<double> null = exact_null(s, 0.1);
  int tail = 0;
  for (double v : null) tail += (v >= obs) ? 1 : 0;
  const TestResult r = exact_permutation_test(s, 0.1, 0.05);
  CHECK(r.statistic == doctest::Approx(obs));
  CHECK(r.p_value == doctest::Approx(static_cast<double>(tail) / null.size()));
}

TEST_CASE("rejection is monotone in the observed statistic") {
  // with the null pool fixed, a larger observed value can only keep or gain
  // significance; emulate by shifting the diagonal of a fixed matrix
  const Sample s = tiny_independent_sample(8, Rng(41).child(0));
  const TestResult weak = permutation_test(s, 0.05, 0.05, 300, Rng(42).child(1));
  Sample boosted = s;
  for (auto& tp : boosted) tp.x2 = tp.x1;  // force maximal coincidence
  const TestResult strong =
      permutation_test(boosted, 0.05, 0.05, 300, Rng(42).child(1));
  CHECK(strong.p_value <= weak.p_value + 1e-15);
}

TEST_CASE("quantile sits inside the pooled null range") {
  const Sample s = tiny_independent_sample(9, Rng(51).child(0));
  const TestResult r = permutation_test(s, 0.05, 0.05, 400, Rng(52).child(1), true);
  const double lo = *std::min_element(r.null_values.begin(), r.null_values.end());
  const double hi = *std::max_element(r.null_values.begin(), r.null_values.end());
  CHECK(r.quantile >= std::min(lo, r.statistic));
  CHECK(r.quantile <= std::max(hi, r.statistic));
}

TEST_CASE("alpha at the pool edge never rejects") {
  // alpha small enough that the threshold is the pool maximum, which the
  // observed value cannot strictly exceed when it is itself in the pool
  const Sample s = tiny_dependent_sample(7, Rng(61).child(0));
  const TestResult r = permutation_test(s, 0.05, 1e-9, 50, Rng(62).child(1));
  CHECK_FALSE(r.reject);
}
