#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prophet/errors.hpp"

namespace prophet {

enum class Family { Pareto, Frechet, BoundedPower, Exponential };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Counter-based generator: draw i of stream (seed, stream_index) is a pure
// function of the triple, so replications can run in any order.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double next_uniform() noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }
  [[nodiscard]] std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct EvtScales {
  double u_n;  // F^{<=}(1 - 1/n)
  double a_n;
};

// A reward law in the domain of attraction of an extreme value distribution
// with index gamma. Immutable after construction.
//
//   Pareto        tail x^{-1/g} on [1, inf),          0 < g < 1
//   Frechet       cdf exp(-x^{-1/g}) on (0, inf),     0 < g < 1
//   BoundedPower  tail (1 - x/c)^{-1/g} on [0, c],    g < 0  (g = -1, c = 1: uniform)
//   Exponential   tail e^{-x} on [0, inf),            g = 0
class DistributionModel {
 public:
  static DistributionModel pareto(double gamma);
  static DistributionModel frechet(double gamma);
  static DistributionModel bounded_power(double gamma, double endpoint = 1.0);
  static DistributionModel uniform() { return bounded_power(-1.0); }
  static DistributionModel exponential();

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] double left_endpoint() const noexcept;
  [[nodiscard]] double right_endpoint() const noexcept;
  [[nodiscard]] bool bounded() const noexcept { return family_ == Family::BoundedPower; }
  [[nodiscard]] std::string describe() const;

  [[nodiscard]] double cdf(double x) const;
  // F-bar(x) = 1 - F(x), computed without cancellation.
  [[nodiscard]] double tail(double x) const;
  // Generalized inverse F^{<=}(p); p must lie in [0, 1].
  [[nodiscard]] double quantile(double p) const;
  // F^{<=}(1 - q). Accurate for tiny q, where quantile(1 - q) would round.
  [[nodiscard]] double upper_quantile(double q) const;
  // I(t) = int_t^{x*} F-bar(u) du, extended below x_min by I(t) = (x_min - t) + I(x_min).
  [[nodiscard]] double tail_integral(double t) const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] EvtScales evt_scales(std::size_t n) const;

  [[nodiscard]] std::vector<double> sample(SeededStream& stream, std::size_t count) const;

 private:
  DistributionModel(Family family, double gamma, double scale);

  Family family_;
  double gamma_;
  double scale_;      // right endpoint c for BoundedPower, unused otherwise
  double exponent_;   // -1/gamma for BoundedPower, 1/gamma for Pareto/Frechet
  double mean_;
};

}  // namespace prophet
