#include "synchro/coincidence.hpp"

#include <stdexcept>

namespace synchro {

long long coincidence_count(const Train& x1, const Train& x2, double delta) {
  long long total = 0;
  std::size_t lo = 0, hi = 0;
  for (const double u : x1) {
    while (lo < x2.size() && x2[lo] < u - delta) ++lo;
    if (hi < lo) hi = lo;
    while (hi < x2.size() && x2[hi] <= u + delta) ++hi;
    total += static_cast<long long>(hi - lo);
  }
  return total;
}

double mean_coincidence(const Sample& s, double delta) {
  if (s.empty()) throw std::invalid_argument("empty sample");
  long long sum = 0;
  for (const auto& tr : s) sum += coincidence_count(tr.x1, tr.x2, delta);
  return static_cast<double>(sum) / static_cast<double>(s.size());
}

double f_phi(const TrialPair& a, const TrialPair& b, double delta) {
  return static_cast<double>(coincidence_count(a.x1, a.x2, delta) -
                             coincidence_count(a.x1, b.x2, delta));
}

std::vector<std::vector<long long>> phi_matrix(const Sample& s, double delta) {
  const std::size_t n = s.size();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = coincidence_count(s[i].x1, s[j].x2, delta);
  return m;
}

long long cross_sum(const std::vector<std::vector<long long>>& m) {
  long long s = 0;
  for (const auto& row : m)
    for (const long long v : row) s += v;
  return s;
}

double t_statistic_from_matrix(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n < 2) throw std::invalid_argument("T_n needs n >= 2");
  long long diag = 0;
  for (std::size_t i = 0; i < n; ++i) diag += m[i][i];
  const long long cross = cross_sum(m);
  const double dn = static_cast<double>(n);
  return (dn * static_cast<double>(diag) - static_cast<double>(cross)) /
         (dn * (dn - 1.0));
}

double t_statistic(const Sample& s, double delta) {
  return t_statistic_from_matrix(phi_matrix(s, delta));
}

double statistic_for_permutation(const std::vector<std::vector<long long>>& m,
                                 const std::vector<std::uint32_t>& pi) {
  const std::size_t n = m.size();
  if (pi.size() != n) throw std::invalid_argument("permutation size mismatch");
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += m[i][pi[i]];
  return static_cast<double>(sum) / static_cast<double>(n);
}

}  // namespace synchro
