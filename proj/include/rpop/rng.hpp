#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rpop {

/// Seeded random stream used by every instance generator.
///
/// The raw source is std::mt19937_64 (fully specified by the standard), and
/// all variates are derived from it by fixed transforms rather than the
/// implementation-defined <random> distributions, so a given seed produces
/// the same instance everywhere:
///   - uniform01: (x >> 11) * 2^-53, values in [0, 1)
///   - normal:    Box-Muller on two uniforms, pairs cached
///   - uniform_int(lo, hi): lo + x % (hi - lo + 1)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // 1 - u keeps the argument of log strictly positive.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  // Closed range [lo, hi]. The modulo bias is negligible for the spans used
  // by the generators and keeps the derivation trivially portable.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rpop
