#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coevo/random.hpp"

namespace coevo {

/// Fixed-length bit string. Its game value is the number of ones.
/// Immutable once built; the ones count is cached.
class Genome {
public:
  /// Every element of bits must be 0 or 1, and bits must be non-empty.
  explicit Genome(std::vector<std::uint8_t> bits);

  std::size_t length() const { return bits_.size(); }
  std::size_t ones() const { return ones_; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const Genome& other) const { return bits_ == other.bits_; }
  std::strong_ordering operator<=>(const Genome& other) const { return bits_ <=> other.bits_; }

private:
  std::vector<std::uint8_t> bits_;
  std::size_t ones_ = 0;
};

/// Per-bit mutation probability and the probability that a mutated bit is set to 1.
struct MutationParams {
  double rate = 0.005;
  double bias = 0.5;

  /// Throws ConfigError when either value lies outside [0, 1].
  void validate() const;
};

/// All-zero genome of the given length (length 0 is a ConfigError).
Genome new_genome(std::size_t length);

inline std::size_t ones_count(const Genome& g) { return g.ones(); }

/// Greater-than-or-equals game in half points from the first player's view: 2 win, 1 draw, 0 loss.
inline int game_half_points(std::size_t ones_a, std::size_t ones_b) {
  return ones_a > ones_b ? 2 : (ones_a == ones_b ? 1 : 0);
}

/// Score of a against b: 1, 0.5 or 0. Genomes must have equal length.
double play_game(const Genome& a, const Genome& b);

/// Returns a mutated copy. Bits are visited in order; each bit draws once for
/// "mutate?" and, if so, once more for its new value (1 with probability bias).
Genome mutate(const Genome& g, const MutationParams& params, Rng& rng);

} // namespace coevo
