#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace designforge {

/// Deterministic random source used by all seeded generators.
///
/// Backed by std::mt19937_64 (fully specified by the standard), with
/// uniform doubles taken as the top 53 bits and Gaussians via Box-Muller,
/// so the same seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  /// Uniform integer in {0, ..., n-1}.
  int pick(int n) {
    const int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

  bool coin() { return uniform() < 0.5; }

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace designforge
