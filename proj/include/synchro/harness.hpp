#pragma once

// Experiment orchestration: Monte-Carlo estimates of the separation, power
// curves, Type I checks, minimal-sample-size search, and the quadratic fit
// of n* against network size.
//
// Determinism contract: every result is a pure function of (config, seed).
// Replicate k draws from Rng(seed).child(k) and writes slot k; thread count
// only affects wall time. n* probes key their randomness by the probed n,
// so the search path does not perturb individual probes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "synchro/rng.hpp"
#include "synchro/simulate.hpp"

namespace synchro {

struct TestConfig {
  double delta = 0.1;
  double alpha = 0.05;
  int B = 500;
};

struct McMoment {
  double estimate = 0.0;
  double se = 0.0;
  int N = 0;
};

// mean of T_n over N_sim independent samples of n trials
McMoment estimate_delta_phi_mc(const Model& m, int n, int N_sim, double delta,
                               std::uint64_t seed, int threads = 1);

struct PowerPoint {
  std::string param;  // "delta", "n", "M", or "" for a single run
  double value = 0.0;
  double power = 0.0;
  double ci_half = 0.0;  // 1.96 sqrt(p(1-p)/N_sim)
  int N_sim = 0;
  int n = 0;
  int B = 0;
  double alpha = 0.0;
};

PowerPoint estimate_power(const Model& m, const TestConfig& tc, int n,
                          int N_sim, std::uint64_t seed, int threads = 1);

// grid sweep along one axis; "delta" and "n" apply to any model, "M" only to
// the Hawkes models
std::vector<PowerPoint> power_curve(const Model& m, const TestConfig& tc,
                                    const std::string& param,
                                    const std::vector<double>& grid, int n,
                                    int N_sim, std::uint64_t seed,
                                    int threads = 1);

// rejection rate under an H0 model; same estimator as estimate_power
PowerPoint type_i_experiment(const Model& m, const TestConfig& tc, int n,
                             int N_sim, std::uint64_t seed, int threads = 1);

struct NStarSearch {
  int step = 10;     // lattice spacing
  int n_max = 2000;  // saturation bound
};

struct ProbeRow {
  int n = 0;
  double power = 0.0;
  double ci_half = 0.0;
};

struct NStarResult {
  int n_star = 0;
  bool achieved = false;  // false: power 1-beta not reached by n_max
  std::vector<ProbeRow> probes;
};

// minimal lattice n with probe(n) >= 1 - beta, by doubling then bisection;
// the generic form takes any probe so tests can inject a deterministic one
NStarResult find_n_star(const std::function<ProbeRow(int)>& probe, double beta,
                        const NStarSearch& search);
NStarResult find_n_star_mc(const Model& m, const TestConfig& tc, double beta,
                           const NStarSearch& search, int N_sim,
                           std::uint64_t seed, int threads = 1);

struct QuadFit {
  double c0 = 0.0, c1 = 0.0;      // y ~ c0 + c1 x^2
  std::vector<double> residuals;  // same order as inputs
};
QuadFit fit_quadratic(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace synchro
