#include "synchro/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synchro/coincidence.hpp"
#include "synchro/parallel.hpp"
#include "synchro/permtest.hpp"

namespace synchro {

// purposes under a replicate stream
namespace {
constexpr std::uint64_t kSim = 0;
constexpr std::uint64_t kPerm = 1;
constexpr std::uint64_t kProbeBase = 0x6e73746172ull;  // distinct branch for n* probes
}  // namespace

McMoment estimate_delta_phi_mc(const Model& m, int n, int N_sim, double delta,
                               std::uint64_t seed, int threads) {
  if (n < 2) throw std::invalid_argument("estimate_delta_phi_mc: n >= 2");
  if (N_sim < 2) throw std::invalid_argument("estimate_delta_phi_mc: N_sim >= 2");
  std::vector<double> vals(static_cast<std::size_t>(N_sim));
  parallel_for(N_sim, threads, [&](int rep) {
    const Rng r = Rng(seed).child(static_cast<std::uint64_t>(rep));
    const Sample s = iid_sample(m, n, r.child(kSim));
    vals[static_cast<std::size_t>(rep)] = t_statistic(s, delta);
  });
  McMoment out;
  out.N = N_sim;
  double sum = 0.0;
  for (double v : vals) sum += v;
  out.estimate = sum / N_sim;
  double ss = 0.0;
  for (double v : vals) ss += (v - out.estimate) * (v - out.estimate);
  out.se = std::sqrt(ss / (N_sim - 1.0) / N_sim);
  return out;
}

PowerPoint estimate_power(const Model& m, const TestConfig& tc, int n,
                          int N_sim, std::uint64_t seed, int threads) {
  if (n < 2) throw std::invalid_argument("estimate_power: n >= 2");
  if (N_sim < 1) throw std::invalid_argument("estimate_power: N_sim >= 1");
  std::vector<char> rej(static_cast<std::size_t>(N_sim));
  parallel_for(N_sim, threads, [&](int rep) {
    const Rng r = Rng(seed).child(static_cast<std::uint64_t>(rep));
    const Sample s = iid_sample(m, n, r.child(kSim));
    const TestResult res =
        permutation_test(s, tc.delta, tc.alpha, tc.B, r.child(kPerm));
    rej[static_cast<std::size_t>(rep)] = res.reject ? 1 : 0;
  });
  int count = 0;
  for (char c : rej) count += c;
  PowerPoint p;
  p.power = static_cast<double>(count) / N_sim;
  p.ci_half = 1.96 * std::sqrt(p.power * (1.0 - p.power) / N_sim);
  p.N_sim = N_sim;
  p.n = n;
  p.B = tc.B;
  p.alpha = tc.alpha;
  return p;
}

std::vector<PowerPoint> power_curve(const Model& m, const TestConfig& tc,
                                    const std::string& param,
                                    const std::vector<double>& grid, int n,
                                    int N_sim, std::uint64_t seed,
                                    int threads) {
  if (grid.empty()) throw std::invalid_argument("power_curve: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("power_curve: grid must be sorted");
  std::vector<PowerPoint> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Model mg = m;
    TestConfig tg = tc;
    int ng = n;
    if (param == "delta") {
      tg.delta = grid[g];
    } else if (param == "n") {
      ng = static_cast<int>(std::lround(grid[g]));
    } else if (param == "M") {
      if (m.kind != ModelKind::hawkes && m.kind != ModelKind::hawkes_indep)
        throw std::invalid_argument("power_curve: M varies only for hawkes models");
      mg.hawkes.M = static_cast<int>(std::lround(grid[g]));
    } else {
      throw std::invalid_argument("power_curve: param must be delta, n, or M");
    }
    // each grid point gets its own replicate family, keyed by position
    PowerPoint p = estimate_power(mg, tg, ng, N_sim,
                                  splitmix64(seed + 0x67726964ull * (g + 1)),
                                  threads);
    p.param = param;
    p.value = grid[g];
    out.push_back(p);
  }
  return out;
}

PowerPoint type_i_experiment(const Model& m, const TestConfig& tc, int n,
                             int N_sim, std::uint64_t seed, int threads) {
  const bool h0 =
      m.kind == ModelKind::hawkes_indep || m.kind == ModelKind::silent ||
      (m.kind == ModelKind::jitter && m.jitter.eta == 0.0);
  if (!h0)
    throw std::invalid_argument(
        "type_i_experiment: model must satisfy the null (eta = 0 jitter, or "
        "independent hawkes networks)");
  return estimate_power(m, tc, n, N_sim, seed, threads);
}

NStarResult find_n_star(const std::function<ProbeRow(int)>& probe, double beta,
                        const NStarSearch& search) {
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta in (0,1)");
  if (search.step < 1 || search.n_max < search.step)
    throw std::invalid_argument("n* search: step >= 1, n_max >= step");
  const double target = 1.0 - beta;
  const auto on_lattice = [&](int n) {
    const int k = std::max(1, (n + search.step - 1) / search.step);
    return k * search.step;
  };

  NStarResult res;
  const auto run = [&](int n) {
    for (const ProbeRow& p : res.probes)
      if (p.n == n) return p;  // memoized; keeps the table deduplicated
    ProbeRow p = probe(n);
    p.n = n;
    res.probes.push_back(p);
    return p;
  };

  // geometric doubling to bracket, then lattice bisection
  int lo = 0;  // power known < target (0 = virtual floor)
  int hi = -1;
  for (int n = on_lattice(search.step); n <= search.n_max; n = on_lattice(2 * n)) {
    if (run(n).power >= target) {
      hi = n;
      break;
    }
    lo = n;
    if (n == search.n_max) break;
    if (2 * n > search.n_max && n < search.n_max) {
      // probe the boundary before giving up
      if (run(search.n_max).power >= target) {
        lo = n;
        hi = search.n_max;
      }
      break;
    }
  }
  if (hi < 0) {
    std::sort(res.probes.begin(), res.probes.end(),
              [](const ProbeRow& x, const ProbeRow& y) { return x.n < y.n; });
    res.achieved = false;
    res.n_star = search.n_max;
    return res;
  }
  while (hi - lo > search.step) {
    const int mid = on_lattice(lo + (hi - lo) / 2);
    if (mid <= lo || mid >= hi) break;
    if (run(mid).power >= target)
      hi = mid;
    else
      lo = mid;
  }
  std::sort(res.probes.begin(), res.probes.end(),
            [](const ProbeRow& x, const ProbeRow& y) { return x.n < y.n; });
  res.achieved = true;
  res.n_star = hi;
  return res;
}

NStarResult find_n_star_mc(const Model& m, const TestConfig& tc, double beta,
                           const NStarSearch& search, int N_sim,
                           std::uint64_t seed, int threads) {
  return find_n_star(
      [&](int n) {
        const PowerPoint p = estimate_power(
            m, tc, n, N_sim,
            splitmix64(seed + kProbeBase * static_cast<std::uint64_t>(n)),
            threads);
        return ProbeRow{n, p.power, p.ci_half};
      },
      beta, search);
}

QuadFit fit_quadratic(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_quadratic: need >= 2 paired points");
  double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double q = xs[i] * xs[i];
    s0 += 1.0;
    s1 += q;
    s2 += q * q;
    t0 += ys[i];
    t1 += q * ys[i];
  }
  const double det = s0 * s2 - s1 * s1;
  if (std::fabs(det) < 1e-12 * std::max(1.0, s0 * s2))
    throw std::invalid_argument("fit_quadratic: degenerate design (all |x| equal)");
  QuadFit f;
  f.c1 = (s0 * t1 - s1 * t0) / det;
  f.c0 = (t0 - f.c1 * s1) / s0;
  f.residuals.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.residuals[i] = ys[i] - (f.c0 + f.c1 * xs[i] * xs[i]);
  return f;
}

}  // namespace synchro
