#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace trm {

/// Deterministic RNG wrapper. All randomness in the library flows through an
/// explicit seed; nothing reads global state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  /// Derive an independent child seed (for per-case streams).
  std::uint64_t fork() { return eng_() ^ 0x9e3779b97f4a7c15ull; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace trm
