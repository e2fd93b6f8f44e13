#pragma once

// Counter-based generator (Philox4x32-10) with splittable substreams.
//
// Experiments key a child stream per (purpose, replicate, trial/permutation),
// so any replicate can be computed on any worker in any order and still see
// exactly the same randomness. child() derives a fresh key by integer mixing;
// the counter restarts at zero in the child.

#include <cstdint>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace synchro {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed) {}

  // independent substream; deterministic in (key, id)
  Rng child(std::uint64_t id) const {
    return Rng(splitmix64(key_ + 0x9E3779B97F4A7C15ull * (id + 1)));
  }

  std::uint32_t u32() {
    if (have_ == 0) refill();
    return buf_[--have_];
  }

  std::uint64_t u64() {
    const std::uint64_t hi = u32();
    return (hi << 32) | u32();
  }

  // [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // (0, 1), safe to take logs of
  double uniform_pos() {
    return (static_cast<double>(u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // unbiased integer in [0, n) by rejection
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t rem = std::uint64_t(-n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t v = u64();
      if (v >= rem) return v % n;
    }
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  long long poisson(double mean) {
    if (mean < 0 || !std::isfinite(mean)) throw std::invalid_argument("poisson mean");
    if (mean == 0) return 0;
    return mean < 30.0 ? poisson_knuth(mean) : poisson_ptrs(mean);
  }

  // uniform random permutation of {0..n-1}, Fisher-Yates
  std::vector<std::uint32_t> permutation(std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::uint32_t i = n; i > 1; --i) {
      const std::uint32_t j = static_cast<std::uint32_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  long long poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    return k - 1;
  }

  // transformed rejection with squeeze (Hoermann's PTRS), good for mean >= ~10
  long long poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform_pos() - 0.5;
      const double v = uniform_pos();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
      if (kf < 0 || (us < 0.013 && v > us)) continue;
      // acceptance check against the dominating hat, in log space
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * loglam - mean - std::lgamma(kf + 1.0))
        return static_cast<long long>(kf);
    }
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi_);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi_ >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t m0 = 0xD2511F53ull * c0;
      const std::uint64_t m1 = 0xCD9E8D57ull * c2;
      const std::uint32_t t0 = c1, t2 = c3;
      c0 = static_cast<std::uint32_t>(m1 >> 32) ^ t0 ^ k0;
      c1 = static_cast<std::uint32_t>(m1);
      c2 = static_cast<std::uint32_t>(m0 >> 32) ^ t2 ^ k1;
      c3 = static_cast<std::uint32_t>(m0);
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_[0] = c0;
    buf_[1] = c1;
    buf_[2] = c2;
    buf_[3] = c3;
    have_ = 4;
    if (++ctr_ == 0) ++ctr_hi_;
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0, ctr_hi_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int have_ = 0;
};

}  // namespace synchro
