#pragma once

#include <cstdint>

namespace qrex {

// splitmix64 step; the generator below and the sub-seed derivation are
// fully specified here so that artifacts are reproducible bit-for-bit
// across platforms and reimplementations.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derived seed for stream `counter` of a root seed.
/// sub_seed(s, k) = splitmix64 applied once to s + (k+1) * 0x9E3779B97F4A7C15.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t counter);

/// Deterministic random stream. std::normal_distribution and friends are
/// implementation-defined, so the transforms are spelled out instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (two uniforms per call, cosine branch).
  double normal();

  /// Exponential with mean 1.
  double exponential();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

}  // namespace qrex
