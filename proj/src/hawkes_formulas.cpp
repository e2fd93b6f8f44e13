#include "synchro/hawkes_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synchro {

void require_subcritical(double a, double b) {
  if (!(a > 0) || !(b > 0) || !(a < b))
    throw std::invalid_argument("need 0 < a < b (subcritical kernel)");
}

double psi(double t, double a, double b) {
  require_subcritical(a, b);
  return t > 0 ? a * std::exp(-(b - a) * t) : 0.0;
}

double psi_integral(double a, double b) {
  require_subcritical(a, b);
  const double ell = a / b;
  return ell / (1.0 - ell);
}

double k1_rate(double mu, double a, double b) {
  require_subcritical(a, b);
  if (mu < 0) throw std::invalid_argument("mu >= 0");
  return mu / (1.0 - a / b);
}

double k2_density(double s, double mu, double a, double b) {
  require_subcritical(a, b);
  const double ell = a / b;
  const double r = b - a;
  const double c = a * mu / (1.0 - ell) * (1.0 + 0.5 * ell / (1.0 - ell));
  return c * std::exp(-r * std::fabs(s));
}

double cumulant_bound_density(int m, const std::vector<double>& times,
                              double mu, double a, double b, double C_m) {
  require_subcritical(a, b);
  if (mu < 0) throw std::invalid_argument("mu >= 0");
  if (m < 1 || m > 4)
    throw std::invalid_argument("cumulant bound covers orders 1 to 4");
  if (times.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("need one time per order");
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  const double ell = a / b;
  return C_m * std::pow(a, m - 1) * mu / std::pow(1.0 - ell, m) *
         std::exp(-(b - a) * (*hi - *lo));
}

double chain_integral(std::vector<double> alphas, double a, double b) {
  require_subcritical(a, b);
  if (alphas.empty()) throw std::invalid_argument("chain_integral: empty");
  std::sort(alphas.begin(), alphas.end());
  const double r = b - a;
  const double m = static_cast<double>(alphas.size());
  double prod = a / (m * r);
  for (std::size_t i = 1; i < alphas.size(); ++i)
    prod *= a * std::exp(-r * (alphas[i] - alphas[0]));
  return prod;
}

double hawkes_mean_count(double mu, double a, double b, double T) {
  if (!(T >= 0)) throw std::invalid_argument("T >= 0");
  return k1_rate(mu, a, b) * T;
}

double window_count_var(double mu, double a, double b, double T) {
  require_subcritical(a, b);
  if (!(T >= 0)) throw std::invalid_argument("T >= 0");
  const double r = b - a;
  const double c = k2_density(0.0, mu, a, b);
  // Var N = E N + 2 c int_0^T (T - s) e^{-r s} ds
  const double tail = T / r - (1.0 - std::exp(-r * T)) / (r * r);
  return k1_rate(mu, a, b) * T + 2.0 * c * tail;
}

static void check_pair_window(double delta, double T) {
  if (!(T > 0) || !(delta > 0) || delta > T)
    throw std::invalid_argument("need 0 < delta <= T");
}

double delta_phi_hawkes(double nu, double a, double b, int M, double delta,
                        double T) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  if (M < 1 || nu < 0) throw std::invalid_argument("M >= 1, nu >= 0");
  const double ell = a / b;
  const double r = b - a;
  const double lead = nu * delta / M * (2.0 - ell) * ell /
                      ((1.0 - ell) * (1.0 - ell) * (1.0 - ell));
  const double e = (1.0 - std::exp(-r * delta)) / (r * delta);
  return lead * (1.0 + (b * (1.0 - ell) * (T - delta) - 1.0) * e);
}

double delta_phi_hawkes_factored(double nu, double a, double b, int M,
                                 double delta, double T) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  if (M < 1 || nu < 0) throw std::invalid_argument("M >= 1, nu >= 0");
  const double ell = a / b;
  const double r = b - a;
  const double lead = nu * delta / M * (2.0 - ell) * ell /
                      ((1.0 - ell) * (1.0 - ell) * (1.0 - ell));
  const double omexp = 1.0 - std::exp(-r * delta);
  return lead * ((T - delta) * omexp / delta + 1.0 - omexp / (r * delta));
}

double delta_phi_hawkes_lb(double nu, double a, double b, int M, double delta,
                           double T) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  if (M < 1 || nu < 0) throw std::invalid_argument("M >= 1, nu >= 0");
  const double ell = a / b;
  const double r = b - a;
  const double omexp = 1.0 - std::exp(-r * delta);
  return 0.25 * nu * ell * T * omexp /
         (M * (1.0 - ell) * (1.0 - ell) * (1.0 - ell));
}

double v0(double nu, double ell, double delta, double T) {
  if (!(ell > 0 && ell < 1)) throw std::invalid_argument("ell in (0,1)");
  check_pair_window(delta, T);
  const double q = 1.0 - ell;
  const double lead = 4.0 * nu * nu * delta * T / (q * q);
  return lead * (1.0 + 2.0 * nu * delta / q -
                 (delta / (2.0 * T)) * (1.0 + (10.0 / 3.0) * nu * delta / q));
}

double gap_indep(double nu, double a, double b, int M, double delta, double T,
                 double C) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  const double ell = a / b;
  const double q = 1.0 - ell;
  const double rate_plus = nu + a / M;
  return C * (a * T / M) * (nu * nu * delta * delta / (q * q * q)) *
         (1.0 + rate_plus / (b * q * q));
}

double gap_obs(double nu, double a, double b, int M, double delta, double T,
               double C) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  const double ell = a / b;
  const double q = 1.0 - ell;
  const double rate_plus = nu + a / M;
  return C * (a * T / M) * (nu * delta / (q * q)) *
         (1.0 + (rate_plus * delta / q) * (1.0 + rate_plus / (b * q * q)));
}

double crit_rhs_hawkes(double nu, double a, double b, int M, double delta,
                       double T, int n, double alpha, double beta, double C) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  if (n < 2) throw std::invalid_argument("n >= 2");
  if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1))
    throw std::invalid_argument("alpha, beta in (0,1)");
  const double ell = a / b;
  const double q = 1.0 - ell;
  const double rate_plus = nu + a / M;
  const double inner =
      1.0 + delta * rate_plus / q * (1.0 + ell / (M * q * q));
  return C * std::sqrt(delta * T / (n * alpha * beta)) * (rate_plus / q) *
         std::sqrt(inner);
}

double n_min_hawkes(double nu, double a, double b, int M, double delta,
                    double T, double alpha, double beta, double Cp) {
  require_subcritical(a, b);
  check_pair_window(delta, T);
  if (!(nu > 0)) throw std::invalid_argument("nu > 0");
  if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1))
    throw std::invalid_argument("alpha, beta in (0,1)");
  const double ell = a / b;
  const double q = 1.0 - ell;
  const double r = b - a;
  const double rate_plus = nu + a / M;
  const double shape = (M + a / nu) * (M + a / nu) * q * q * q * q /
                       (ell * ell * T);
  const double omexp = 1.0 - std::exp(-r * delta);
  const double num =
      delta + delta * delta * rate_plus / q * (1.0 + ell / (M * q * q));
  return Cp / (alpha * beta) * shape * num / (omexp * omexp);
}

std::vector<std::string> hawkes_hypothesis_notes(double nu, double a, double b,
                                                 int M, double delta, double T,
                                                 int n, double alpha,
                                                 double beta) {
  std::vector<std::string> notes;
  (void)nu;
  (void)M;
  (void)delta;
  const double ell = a / b;
  if (!(b * (1.0 - ell) * T > 4.0))
    notes.push_back("window too short for the separation lower bound (b(1-ell)T <= 4)");
  if (n > 0 && n < 3.0 / std::sqrt(alpha * beta))
    notes.push_back("sample too small for the threshold bound (n < 3/sqrt(alpha beta))");
  return notes;
}

}  // namespace synchro
