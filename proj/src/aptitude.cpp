#include "coevo/aptitude.hpp"

#include <numeric>

namespace coevo {

double mean_aptitude(std::span<const double> aptitudes) {
  if (aptitudes.empty())
    return 0.0;
  return std::accumulate(aptitudes.begin(), aptitudes.end(), 0.0) /
         static_cast<double>(aptitudes.size());
}

} // namespace coevo
