#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace latinpat {

// SplitMix64 finalizer. Used both to expand seeds and as the counter-based
// mixing function for block keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Sub-seed for a named subcomponent: stable across platforms and runs.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept;

// Key of Monte Carlo block `block` under `seed`. Blocks are independent
// streams, so hit counts do not depend on how blocks are scheduled.
std::uint64_t block_key(std::uint64_t seed, std::uint64_t block) noexcept;

// xoshiro256** seeded through SplitMix64. Satisfies UniformRandomBitGenerator,
// but callers should use the bounded helpers below rather than <random>
// distributions, whose output is implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() noexcept;

  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace latinpat
