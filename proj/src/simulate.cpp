#include "synchro/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace synchro {

NoiseSpec NoiseSpec::uniform_noise(double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("uniform noise needs lo <= hi");
  NoiseSpec n;
  n.kind = Kind::uniform;
  n.lo = lo;
  n.hi = hi;
  return n;
}

NoiseSpec NoiseSpec::triangular_decreasing(double D) {
  if (!(D > 0)) throw std::invalid_argument("triangular noise needs D > 0");
  NoiseSpec n;
  n.kind = Kind::tridec;
  n.D = D;
  return n;
}

NoiseSpec NoiseSpec::triangular_increasing(double D) {
  if (!(D > 0)) throw std::invalid_argument("triangular noise needs D > 0");
  NoiseSpec n;
  n.kind = Kind::triinc;
  n.D = D;
  return n;
}

double NoiseSpec::sample(Rng& rng) const {
  switch (kind) {
    case Kind::uniform:
      return lo == hi ? lo : rng.uniform(lo, hi);
    case Kind::tridec:
      // inverse CDF of 2(D-x)/D^2
      return D * (1.0 - std::sqrt(1.0 - rng.uniform()));
    case Kind::triinc:
      // inverse CDF of 2x/D^2
      return D * std::sqrt(rng.uniform());
  }
  return 0.0;
}

double NoiseSpec::support_radius() const {
  switch (kind) {
    case Kind::uniform:
      return std::max(std::fabs(lo), std::fabs(hi));
    case Kind::tridec:
    case Kind::triinc:
      return D;
  }
  return 0.0;
}

std::string NoiseSpec::to_string() const {
  char buf[64];
  switch (kind) {
    case Kind::uniform:
      std::snprintf(buf, sizeof buf, "uniform:%g,%g", lo, hi);
      break;
    case Kind::tridec:
      std::snprintf(buf, sizeof buf, "tridec:%g", D);
      break;
    case Kind::triinc:
      std::snprintf(buf, sizeof buf, "triinc:%g", D);
      break;
  }
  return buf;
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("noise spec: expected kind:params, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  char extra;
  if (kind == "uniform") {
    double lo, hi;
    if (std::sscanf(rest.c_str(), "%lf,%lf %c", &lo, &hi, &extra) != 2)
      throw std::invalid_argument("noise spec: uniform wants lo,hi");
    return uniform_noise(lo, hi);
  }
  double D;
  if (std::sscanf(rest.c_str(), "%lf %c", &D, &extra) != 1)
    throw std::invalid_argument("noise spec: " + kind + " wants a single width");
  if (kind == "tridec") return triangular_decreasing(D);
  if (kind == "triinc") return triangular_increasing(D);
  throw std::invalid_argument("noise spec: unknown kind '" + kind + "'");
}

Model Model::make_jitter(const JitterParams& p) {
  if (p.lambda1 < 0 || p.lambda2 < 0 || p.eta < 0 || !(p.T > 0))
    throw std::invalid_argument("jitter params: rates >= 0, T > 0");
  Model m;
  m.kind = ModelKind::jitter;
  m.jitter = p;
  return m;
}

static void check_hawkes(const HawkesParams& p) {
  if (!(p.nu >= 0) || !(p.a > 0) || !(p.b > 0) || !(p.a < p.b))
    throw std::invalid_argument("hawkes params: need nu >= 0, 0 < a < b");
  if (p.M < 2) throw std::invalid_argument("hawkes params: M >= 2");
  if (!(p.T > 0) || p.warmup < 0) throw std::invalid_argument("hawkes params: T > 0, warmup >= 0");
}

Model Model::make_hawkes(const HawkesParams& p) {
  check_hawkes(p);
  Model m;
  m.kind = ModelKind::hawkes;
  m.hawkes = p;
  return m;
}

Model Model::make_hawkes_indep(const HawkesParams& p) {
  check_hawkes(p);
  Model m;
  m.kind = ModelKind::hawkes_indep;
  m.hawkes = p;
  return m;
}

Model Model::make_identical(double rate, double T) {
  Model m;
  m.kind = ModelKind::identical;
  m.jitter.lambda1 = rate;
  m.jitter.T = T;
  return m;
}

Model Model::make_silent() {
  Model m;
  m.kind = ModelKind::silent;
  return m;
}

Train sample_poisson(double rate, double t0, double t1, Rng& rng) {
  if (rate < 0 || t1 < t0) throw std::invalid_argument("poisson: rate >= 0, t1 >= t0");
  Train out;
  if (rate == 0 || t1 == t0) return out;
  const long long n = rng.poisson(rate * (t1 - t0));
  out.resize(static_cast<std::size_t>(n));
  for (auto& t : out) t = rng.uniform(t0, t1);
  std::sort(out.begin(), out.end());
  return out;
}

Train sample_hawkes_univariate(double mu, double a, double b, double t0,
                               double T, Rng& rng) {
  if (mu < 0 || !(a > 0) || !(a < b))
    throw std::invalid_argument("hawkes: need mu >= 0, 0 < a < b");
  Train out;
  if (mu == 0) return out;  // intensity can never leave zero

  // Ogata thinning. With the exponential kernel the intensity is Markov:
  //   lambda(t) = mu + (lambda(anchor) - mu) e^{-b (t - anchor)},
  // decreasing between events and bounded by its value at the anchor, so the
  // anchor intensity is a valid envelope for the next proposal.
  double anchor = t0;
  double lambda = mu;  // intensity just after the anchor
  for (;;) {
    const double envelope = lambda;
    const double t = anchor + rng.exponential(envelope);
    if (t > T) break;
    const double lam_t = mu + (lambda - mu) * std::exp(-b * (t - anchor));
    if (lam_t > envelope * (1.0 + 1e-12))
      throw std::logic_error("hawkes thinning: envelope below intensity");
    if (rng.uniform() * envelope <= lam_t) {
      out.push_back(t);
      lambda = lam_t + a;
    } else {
      lambda = lam_t;
    }
    anchor = t;
  }
  return out;
}

TrialPair sample_trial(const Model& m, Rng& rng) {
  switch (m.kind) {
    case ModelKind::jitter: {
      const JitterParams& p = m.jitter;
      const double margin = p.noise.support_radius();
      Train z = sample_poisson(p.eta, -margin, p.T + margin, rng);
      Train y1 = sample_poisson(p.lambda1, 0.0, p.T, rng);
      Train y2 = sample_poisson(p.lambda2, 0.0, p.T, rng);

      Train z_in;
      for (double u : z)
        if (u >= 0.0 && u <= p.T) z_in.push_back(u);
      Train z_jit;
      z_jit.reserve(z.size());
      for (double u : z) {
        const double v = u + p.noise.sample(rng);
        if (v >= 0.0 && v <= p.T) z_jit.push_back(v);
      }
      std::sort(z_jit.begin(), z_jit.end());

      TrialPair tr;
      tr.x1 = merge_sorted(y1, z_in);
      tr.x2 = merge_sorted(y2, z_jit);
      return tr;
    }
    case ModelKind::hawkes: {
      const HawkesParams& p = m.hawkes;
      const Train all = sample_hawkes_univariate(p.nu * p.M, p.a, p.b,
                                                 -p.warmup, p.T, rng);
      TrialPair tr;
      for (double t : all) {
        if (t < 0.0 || t > p.T) continue;
        const std::uint64_t label = rng.below(static_cast<std::uint64_t>(p.M));
        if (label == 0)
          tr.x1.push_back(t);
        else if (label == 1)
          tr.x2.push_back(t);
      }
      return tr;
    }
    case ModelKind::hawkes_indep: {
      const HawkesParams& p = m.hawkes;
      Model one = Model::make_hawkes(p);
      TrialPair ta = sample_trial(one, rng);
      TrialPair tb = sample_trial(one, rng);
      return TrialPair{std::move(ta.x1), std::move(tb.x2)};
    }
    case ModelKind::identical: {
      TrialPair tr;
      tr.x1 = sample_poisson(m.jitter.lambda1, 0.0, m.jitter.T, rng);
      tr.x2 = tr.x1;
      return tr;
    }
    case ModelKind::silent:
      return TrialPair{};
  }
  return TrialPair{};
}

Sample iid_sample(const Model& m, int n, const Rng& rng) {
  if (n < 1) throw std::invalid_argument("iid_sample: n >= 1");
  Sample s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng r = rng.child(static_cast<std::uint64_t>(i));
    s[static_cast<std::size_t>(i)] = sample_trial(m, r);
  }
  return s;
}

}  // namespace synchro
