#pragma once

#include <span>

namespace coevo {

/// Population mean subjective aptitude: the arithmetic mean of the scores.
/// An empty span has mean 0.
double mean_aptitude(std::span<const double> aptitudes);

/// Level of disengagement between two populations: |sigma_a - sigma_b|.
inline double disengagement_delta(double sigma_a, double sigma_b) {
  return sigma_a > sigma_b ? sigma_a - sigma_b : sigma_b - sigma_a;
}

} // namespace coevo
