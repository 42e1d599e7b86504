#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace coevo {

/// Seeded random stream.
///
/// Draws are mapped from the raw 64-bit engine output with fixed integer and
/// floating arithmetic, so a given seed yields the same sequence with any
/// standard library (the std distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::size_t below(std::size_t bound);

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// True with probability p. Always consumes exactly one draw.
  bool chance(double p) { return uniform() < p; }

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace coevo
