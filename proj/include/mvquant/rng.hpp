#pragma once

// Seeded random streams. The engine is xoshiro256** seeded through
// SplitMix64; the variate transforms are implemented here instead of using
// <random> distributions, whose output is implementation-defined and would
// make sample files differ between standard libraries.

#include <array>
#include <cstdint>

namespace mvq {

/// SplitMix64 step; also used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for sub-stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double standard_normal();
  /// Exponential with the given rate, by inversion.
  double exponential(double rate);
  /// Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);
  double chi_square(double dof);

 private:
  std::array<std::uint64_t, 4> s_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace mvq
