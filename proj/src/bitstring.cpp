#include "coevo/bitstring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "coevo/errors.hpp"

namespace coevo {

Genome::Genome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty())
    throw ConfigError("genome length must be at least 1");
  for (auto b : bits_) {
    if (b > 1)
      throw std::invalid_argument("genome bits must be 0 or 1");
    ones_ += b;
  }
}

void MutationParams::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw ConfigError("mutation-rate must lie in [0,1], got " + std::to_string(rate));
  if (!(bias >= 0.0 && bias <= 1.0))
    throw ConfigError("mutation bias must lie in [0,1], got " + std::to_string(bias));
}

Genome new_genome(std::size_t length) {
  if (length == 0)
    throw ConfigError("genome-length must be at least 1");
  return Genome(std::vector<std::uint8_t>(length, 0));
}

double play_game(const Genome& a, const Genome& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("play_game: genome lengths differ");
  return 0.5 * game_half_points(a.ones(), b.ones());
}

Genome mutate(const Genome& g, const MutationParams& params, Rng& rng) {
  std::vector<std::uint8_t> bits(g.bits().begin(), g.bits().end());
  for (auto& bit : bits) {
    if (rng.chance(params.rate))
      bit = rng.chance(params.bias) ? 1 : 0;
  }
  return Genome(std::move(bits));
}

} // namespace coevo
