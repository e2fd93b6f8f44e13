#pragma once

// Closed forms for the mean-field Hawkes network: branching quantities for
// the exponential kernel, first and second order cumulant densities, the
// separation E[T_n], and the variance / sample-size bounds. Throughout
//   ell = a / b   (offspring mean, subcritical when < 1)
//   r   = b - a   (relaxation rate of the all-generation kernel)
// and Psi(t) = a e^{-r t} 1{t > 0} is the sum over generations of the
// kernel's self-convolutions.

#include <string>
#include <vector>

namespace synchro {

// domain guard; throws unless 0 < a < b
void require_subcritical(double a, double b);

double psi(double t, double a, double b);
double psi_integral(double a, double b);  // ell / (1 - ell)

// stationary rate of a univariate Hawkes process with baseline mu
double k1_rate(double mu, double a, double b);

// two-point cumulant density at lag s
double k2_density(double s, double mu, double a, double b);

// exponential envelope dominating the order-m cumulant density off the
// diagonal: C_m a^{m-1} mu / (1-ell)^m * exp(-b (1-ell) (max t - min t)).
// C_2 = 3 suffices; higher constants are calibrated, not pinned.
double cumulant_bound_density(int m, const std::vector<double>& times,
                              double mu, double a, double b, double C_m);

// integral over v of prod_i Psi(alpha_i - v); closed form used as the
// innermost step of every dendrogram evaluation
double chain_integral(std::vector<double> alphas, double a, double b);

// expected total count on [0, T]
double hawkes_mean_count(double mu, double a, double b, double T);

// variance of the total count on [0, T]
double window_count_var(double mu, double a, double b, double T);

// separation E[T_n] for the observed pair of neurons; the two argument
// orders of the same expression, kept separate so tests can pin equality
double delta_phi_hawkes(double nu, double a, double b, int M, double delta,
                        double T);
double delta_phi_hawkes_factored(double nu, double a, double b, int M,
                                 double delta, double T);

// lower bound on the separation (valid when b (1 - ell) T > 4)
double delta_phi_hawkes_lb(double nu, double a, double b, int M, double delta,
                           double T);

// variance of the pair kernel in the M -> infinity limit, where the two
// trains are independent Poisson of rate nu / (1 - ell)
double v0(double nu, double ell, double delta, double T);

// distance of the finite-M variances from v0
double gap_indep(double nu, double a, double b, int M, double delta, double T,
                 double C = 1.0);
double gap_obs(double nu, double a, double b, int M, double delta, double T,
               double C = 1.0);

// threshold scale and sufficient sample size, as for the injection model
double crit_rhs_hawkes(double nu, double a, double b, int M, double delta,
                       double T, int n, double alpha, double beta,
                       double C = 1.0);
double n_min_hawkes(double nu, double a, double b, int M, double delta,
                    double T, double alpha, double beta, double Cp = 1.0);

std::vector<std::string> hawkes_hypothesis_notes(double nu, double a, double b,
                                                 int M, double delta, double T,
                                                 int n, double alpha,
                                                 double beta);

}  // namespace synchro
