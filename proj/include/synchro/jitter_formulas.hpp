#pragma once

// Closed forms for the injection model: coincidence moments for independent
// Poisson pairs, the separation E[T_n] produced by the injected train, and
// the sample-size / threshold bounds built from them. All bounds carry an
// unspecified scaling constant; callers pass C (default 1) and the CLI
// labels such outputs "scaling bound".
//
// Window geometry on [0,T]^2, delta <= T:
//   I = |{|u - v| <= delta}| = 2 delta T - delta^2
//   J = integral of the section length squared = 4 delta^2 T - (10/3) delta^3

#include <string>
#include <vector>

#include "synchro/simulate.hpp"

namespace synchro {

struct OverlapIntegrals {
  double I = 0.0, J = 0.0;
};
OverlapIntegrals overlap_integrals(double delta, double T);

struct PhiMoments {
  double mean = 0.0, var = 0.0;
};
// phi between independent Poisson trains with rates mu1, mu2
PhiMoments indep_phi_moments(double mu1, double mu2, double delta, double T);

// E[(phi - phi')^2] where phi' replaces the second train by a fresh copy
double vardiff(double mu1, double mu2, double delta, double T);

// vardiff at the observed marginal rates eta + lambda1, eta + lambda2
double v_indep_jitter(double lambda1, double lambda2, double eta, double delta,
                      double T);

struct NoiseMoments {
  double p = 0.0;   // P(|xi| <= delta)
  double m1 = 0.0;  // E[|xi| 1{|xi| <= delta}]
};
NoiseMoments noise_moments(const NoiseSpec& noise, double delta);

// separation E[T_n] = eta (T p - m1)
double delta_phi_jitter(double eta, double T, const NoiseSpec& noise,
                        double delta);

struct VarianceBounds {
  double v_indep = 0.0;  // bound on the independent-pair variance scale
  double v_obs = 0.0;    // bound covering the dependent (observed) pair
};
// lambda_max dominates eta and both backgrounds; p = P(|xi| <= delta)
VarianceBounds variance_bounds_jitter(double lambda_max, double eta,
                                      double delta, double T, double p,
                                      double C = 1.0);

// threshold scale the separation must exceed for power at level alpha, beta
double crit_rhs_jitter(double lambda_max, double delta, double T, int n,
                       double alpha, double beta, double C = 1.0);

// sample size sufficient for power 1 - beta
double n_min_jitter(double lambda_max, double eta1, double delta, double T,
                    double p, double alpha, double beta, double Cp = 1.0);

// the explicit constant the concentration argument yields, for callers who
// want a fully tracked (much larger) bound instead of C = 1
double tracked_concentration_constant();

// violated hypotheses of the guarantee, empty when all hold; evaluation
// still proceeds
std::vector<std::string> jitter_hypothesis_notes(double lambda_max, double eta,
                                                 double delta, double T, int n,
                                                 double alpha, double beta);

}  // namespace synchro
