#pragma once

#include <cmath>
#include <cstdint>

namespace aim::detail {

// splitmix64 stream. Self-contained so that seeded output is byte-identical
// across platforms and standard libraries, which std:: distributions do not
// guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Decorrelated stream keyed by (seed, a, b): finalizer applied to each mix.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(finalize(finalize(finalize(seed) ^ a) ^ b));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return finalize_z(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ull / bound);
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x < limit) return x % bound;
    }
  }

  // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double next_normal() {
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
  }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    return finalize_z(z + 0x9E3779B97F4A7C15ull);
  }
  static std::uint64_t finalize_z(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace aim::detail
