#include "hetca/sim/rng.hpp"

#include <cmath>

namespace hetca::sim {

std::uint64_t Stream::next_poisson(double mean) {
  std::uint64_t total = 0;
  while (mean > 0.0) {
    double chunk = mean > 500.0 ? 500.0 : mean;
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double prod = 1.0;
    std::uint64_t n = 0;
    while (true) {
      prod *= next_u01();
      if (prod <= limit) break;
      ++n;
    }
    total += n;
  }
  return total;
}

}  // namespace hetca::sim
