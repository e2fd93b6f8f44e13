#pragma once

// Exact samplers for the two generative models under study plus the trivial
// reference constructions used as sanity oracles.
//
// Jittered injection: X1 = Y1 u (Z n [0,T]), X2 = Y2 u {u + xi_u : u in Z},
// with Y1, Y2, Z independent homogeneous Poisson and xi i.i.d. noise. Z is
// generated on [-m, T+m] (m = noise support radius) so that injected points
// jittered into the window from outside are not lost; both injected trains
// are then clipped back to [0, T].
//
// Mean-field Hawkes: one univariate Hawkes process with baseline nu*M and
// kernel a*exp(-b t) (subcritical, a < b) is simulated by Ogata thinning on
// [-warmup, T]; each point in [0, T] gets an independent uniform label in
// {1..M} and the observed pair consists of the points labeled 1 and 2.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "synchro/rng.hpp"
#include "synchro/spike.hpp"

namespace synchro {

struct NoiseSpec {
  enum class Kind { uniform, tridec, triinc };
  Kind kind = Kind::uniform;
  double lo = 0.0, hi = 0.0;  // uniform support (lo == hi degenerates to a shift)
  double D = 0.0;             // triangular support [0, D]

  static NoiseSpec uniform_noise(double lo, double hi);
  static NoiseSpec triangular_decreasing(double D);  // density 2(D-x)/D^2 on [0,D]
  static NoiseSpec triangular_increasing(double D);  // density 2x/D^2 on [0,D]

  double sample(Rng& rng) const;
  double support_radius() const;
  std::string to_string() const;
  static NoiseSpec parse(const std::string& text);  // "uniform:lo,hi" | "tridec:D" | "triinc:D"
};

struct JitterParams {
  double lambda1 = 10.0, lambda2 = 10.0;  // background rates
  double eta = 1.0;                       // injection rate
  double T = 2.0;
  NoiseSpec noise;
};

struct HawkesParams {
  double nu = 1.0;   // per-neuron baseline
  double a = 3.0;    // kernel height
  double b = 4.0;    // kernel decay
  int M = 10;        // network size
  double T = 2.0;
  double warmup = 10.0;
};

enum class ModelKind {
  jitter,        // the injection model; eta = 0 is an H0 instance
  hawkes,        // one network, neurons 1 and 2 observed
  hawkes_indep,  // two independently simulated networks, one neuron from each (H0)
  identical,     // X2 = X1, Poisson(lambda1); maximal dependence
  silent,        // both trains empty; degenerate edge case
};

struct Model {
  ModelKind kind = ModelKind::jitter;
  JitterParams jitter;
  HawkesParams hawkes;

  static Model make_jitter(const JitterParams& p);
  static Model make_hawkes(const HawkesParams& p);
  static Model make_hawkes_indep(const HawkesParams& p);
  static Model make_identical(double rate, double T);
  static Model make_silent();
};

// homogeneous Poisson points on [t0, t1), sorted
Train sample_poisson(double rate, double t0, double t1, Rng& rng);

// univariate Hawkes path on [t0, T] by thinning; baseline mu, kernel a e^{-bt}
Train sample_hawkes_univariate(double mu, double a, double b, double t0,
                               double T, Rng& rng);

TrialPair sample_trial(const Model& m, Rng& rng);

// trial i drawn from rng.child(i); independent of evaluation order
Sample iid_sample(const Model& m, int n, const Rng& rng);

}  // namespace synchro
