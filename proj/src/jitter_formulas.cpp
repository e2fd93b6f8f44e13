#include "synchro/jitter_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace synchro {

static void check_window(double delta, double T) {
  if (!(T > 0) || !(delta >= 0) || delta > T)
    throw std::invalid_argument("window: need 0 <= delta <= T");
}

OverlapIntegrals overlap_integrals(double delta, double T) {
  check_window(delta, T);
  OverlapIntegrals o;
  o.I = 2.0 * delta * T - delta * delta;
  o.J = 4.0 * delta * delta * T - (10.0 / 3.0) * delta * delta * delta;
  return o;
}

PhiMoments indep_phi_moments(double mu1, double mu2, double delta, double T) {
  if (mu1 < 0 || mu2 < 0) throw std::invalid_argument("rates >= 0");
  const auto [I, J] = overlap_integrals(delta, T);
  PhiMoments m;
  m.mean = mu1 * mu2 * I;
  m.var = mu1 * mu2 * ((mu1 + mu2) * J + I);
  return m;
}

double vardiff(double mu1, double mu2, double delta, double T) {
  if (mu1 < 0 || mu2 < 0) throw std::invalid_argument("rates >= 0");
  const auto [I, J] = overlap_integrals(delta, T);
  return 2.0 * mu1 * mu2 * (I + mu1 * J);
}

double v_indep_jitter(double lambda1, double lambda2, double eta, double delta,
                      double T) {
  return vardiff(eta + lambda1, eta + lambda2, delta, T);
}

NoiseMoments noise_moments(const NoiseSpec& noise, double delta) {
  if (delta < 0) throw std::invalid_argument("delta >= 0");
  NoiseMoments nm;
  switch (noise.kind) {
    case NoiseSpec::Kind::uniform: {
      const double lo = noise.lo, hi = noise.hi;
      if (lo == hi) {
        nm.p = std::fabs(lo) <= delta ? 1.0 : 0.0;
        nm.m1 = nm.p * std::fabs(lo);
        return nm;
      }
      const double A = std::max(lo, -delta);
      const double B = std::min(hi, delta);
      if (A >= B) return nm;  // supports disjoint
      const double len = hi - lo;
      nm.p = (B - A) / len;
      // integral of |x| over [A, B] is (B|B| - A|A|) / 2
      nm.m1 = 0.5 * (B * std::fabs(B) - A * std::fabs(A)) / len;
      return nm;
    }
    case NoiseSpec::Kind::tridec: {
      const double D = noise.D;
      const double c = std::min(delta, D);
      nm.p = 2.0 * c / D - c * c / (D * D);
      nm.m1 = c * c / D - (2.0 / 3.0) * c * c * c / (D * D);
      return nm;
    }
    case NoiseSpec::Kind::triinc: {
      const double D = noise.D;
      const double c = std::min(delta, D);
      nm.p = c * c / (D * D);
      nm.m1 = (2.0 / 3.0) * c * c * c / (D * D);
      return nm;
    }
  }
  return nm;
}

double delta_phi_jitter(double eta, double T, const NoiseSpec& noise,
                        double delta) {
  if (eta < 0 || !(T > 0)) throw std::invalid_argument("eta >= 0, T > 0");
  const NoiseMoments nm = noise_moments(noise, delta);
  return eta * (T * nm.p - nm.m1);
}

VarianceBounds variance_bounds_jitter(double lambda_max, double eta,
                                      double delta, double T, double p,
                                      double C) {
  check_window(delta, T);
  if (lambda_max <= 0) throw std::invalid_argument("lambda_max > 0");
  VarianceBounds vb;
  const double base = lambda_max * lambda_max * delta * T;
  vb.v_indep = C * base * (1.0 + lambda_max * delta);
  vb.v_obs = C * (1.0 + lambda_max * delta) * (base + eta * T * p);
  return vb;
}

double crit_rhs_jitter(double lambda_max, double delta, double T, int n,
                       double alpha, double beta, double C) {
  check_window(delta, T);
  if (n < 2) throw std::invalid_argument("n >= 2");
  if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1))
    throw std::invalid_argument("alpha, beta in (0,1)");
  const double nab = n * alpha * beta;
  const double lead = (1.0 + lambda_max * delta) * lambda_max * lambda_max *
                      delta * T / nab;
  return C * (std::sqrt(lead) + (1.0 + lambda_max * delta) / nab);
}

double n_min_jitter(double lambda_max, double eta1, double delta, double T,
                    double p, double alpha, double beta, double Cp) {
  check_window(delta, T);
  if (!(eta1 > 0) || !(p > 0)) return std::numeric_limits<double>::infinity();
  const double first = 1.0 / std::sqrt(alpha * beta);
  const double second = (1.0 + lambda_max * delta) / (alpha * beta * eta1 * T * p) *
                        (1.0 + (lambda_max / eta1) * (lambda_max * delta / p));
  return Cp * std::max(first, second);
}

double tracked_concentration_constant() {
  const double s = std::sqrt(2.0);
  return 4.0 * s / (1.0 - (2.0 / 3.0) * s);
}

std::vector<std::string> jitter_hypothesis_notes(double lambda_max, double eta,
                                                 double delta, double T, int n,
                                                 double alpha, double beta) {
  std::vector<std::string> notes;
  if (eta > lambda_max)
    notes.push_back("injection rate exceeds the dominating rate (eta > lambda_max)");
  if (delta > T / 2.0)
    notes.push_back("delay exceeds half the window (delta > T/2)");
  if (n < 3.0 / std::sqrt(alpha * beta))
    notes.push_back("sample too small for the threshold bound (n < 3/sqrt(alpha beta))");
  return notes;
}

}  // namespace synchro
