#include "coevo/random.hpp"

#include <limits>
#include <stdexcept>

namespace coevo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0)
    throw std::invalid_argument("Rng::below: bound must be positive");
  const std::uint64_t n = bound;
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  // Reject the tail so every residue is equally likely.
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x = next();
  while (x > limit)
    x = next();
  return static_cast<std::size_t>(x % n);
}

} // namespace coevo
