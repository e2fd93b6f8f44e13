#include "synchro/permtest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "synchro/coincidence.hpp"

namespace synchro {

int quantile_rank(double alpha, int B) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha in (0,1)");
  if (B < 1) throw std::invalid_argument("B >= 1");
  const int k = static_cast<int>(std::ceil((1.0 - alpha) * (B + 1)));
  return std::min(std::max(k, 1), B + 1);
}

static TestResult finish(double observed, std::vector<double> pool,
                         double alpha, bool keep_null) {
  // pool holds the observed value plus the null draws
  const int B = static_cast<int>(pool.size()) - 1;
  TestResult r;
  r.statistic = observed;
  int ge = 0;
  for (std::size_t k = 1; k < pool.size(); ++k)
    if (pool[k] >= observed) ++ge;
  r.p_value = static_cast<double>(1 + ge) / static_cast<double>(B + 1);
  const int rank = quantile_rank(alpha, B);
  if (keep_null) r.null_values.assign(pool.begin() + 1, pool.end());
  std::nth_element(pool.begin(), pool.begin() + (rank - 1), pool.end());
  r.quantile = pool[rank - 1];
  r.reject = r.statistic > r.quantile;
  return r;
}

TestResult permutation_test(const Sample& s, double delta, double alpha, int B,
                            const Rng& rng, bool keep_null) {
  if (s.size() < 2) throw std::invalid_argument("need n >= 2 trials");
  if (B < 1) throw std::invalid_argument("B >= 1");
  const auto m = phi_matrix(s, delta);
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());

  std::vector<double> pool(B + 1);
  std::vector<std::uint32_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0u);
  const double observed = statistic_for_permutation(m, identity);
  pool[0] = observed;
  for (int k = 0; k < B; ++k) {
    Rng pr = rng.child(static_cast<std::uint64_t>(k));
    pool[k + 1] = statistic_for_permutation(m, pr.permutation(n));
  }
  return finish(observed, std::move(pool), alpha, keep_null);
}

std::vector<double> exact_null(const Sample& s, double delta) {
  const std::size_t n = s.size();
  if (n < 2 || n > 8) throw std::invalid_argument("exact enumeration needs 2 <= n <= 8");
  const auto m = phi_matrix(s, delta);
  std::vector<std::uint32_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0u);
  std::vector<double> out;
  do {
    out.push_back(statistic_for_permutation(m, pi));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

TestResult exact_permutation_test(const Sample& s, double delta, double alpha) {
  std::vector<double> all = exact_null(s, delta);
  const auto m = phi_matrix(s, delta);
  std::vector<std::uint32_t> identity(s.size());
  std::iota(identity.begin(), identity.end(), 0u);
  const double observed = statistic_for_permutation(m, identity);

  TestResult r;
  r.statistic = observed;
  int ge = 0;
  for (double v : all)
    if (v >= observed) ++ge;
  r.p_value = static_cast<double>(ge) / static_cast<double>(all.size());
  const int rank = quantile_rank(alpha, static_cast<int>(all.size()) - 1);
  std::nth_element(all.begin(), all.begin() + (rank - 1), all.end());
  r.quantile = all[rank - 1];
  r.reject = r.statistic > r.quantile;
  return r;
}

}  // namespace synchro
