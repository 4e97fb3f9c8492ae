#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "prophet/distributions.hpp"

namespace prophet::testing {

// Seeded generator for property tests; every test draws from its own seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  template <class T, std::size_t N>
  const T& pick(const T (&items)[N]) {
    return items[integer(0, N - 1)];
  }

  // One of the four families with an index drawn from its admissible range.
  DistributionModel distribution() {
    switch (integer(0, 3)) {
      case 0: return DistributionModel::pareto(uniform(0.05, 0.9));
      case 1: return DistributionModel::frechet(uniform(0.05, 0.9));
      case 2: return DistributionModel::bounded_power(-uniform(0.2, 3.0));
      default: return DistributionModel::exponential();
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace prophet::testing
