#pragma once

#include <cstdint>
#include <limits>

namespace drawable {

// SplitMix64 finalizer; used for seed expansion and stream derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Counter-based uniform in [0,1) from (key, counter); stateless.
double hash_uniform(std::uint64_t key, std::uint64_t counter) noexcept;

// xoshiro256** seeded through SplitMix64. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  // Independent stream for (seed, stream index); the trial RNG of the harness.
  static Rng stream(std::uint64_t seed, std::uint64_t index) noexcept;

  result_type operator()() noexcept;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  // 53-bit uniform double in [0,1).
  double uniform() noexcept;
  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t s_[4];
};

}  // namespace drawable
