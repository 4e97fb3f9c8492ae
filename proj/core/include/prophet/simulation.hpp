#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prophet/distributions.hpp"
#include "prophet/values.hpp"

namespace prophet {

// Decision rule replayed by the simulator. Acceptance is decided in
// tail-probability space: with X = F^{<=}(1 - U), X >= threshold exactly when
// U <= F-bar(threshold), so the reward is only materialized when accepted.
class PolicySpec {
 public:
  enum class Kind { DpThresholds, CeQuantiles, FixedThreshold };

  // Thresholds from a fully retained DP table.
  static PolicySpec dp(const ValueTable& table);
  static PolicySpec ce();
  static PolicySpec fixed(double threshold);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double fixed_threshold() const noexcept { return threshold_; }
  [[nodiscard]] std::size_t table_n() const noexcept { return n_; }
  [[nodiscard]] std::size_t table_k() const noexcept { return k_; }
  [[nodiscard]] std::string describe() const;
  // False when DP thresholds were computed for a different law.
  [[nodiscard]] bool built_for(const DistributionModel& d) const noexcept;

  // P(accept) with t arrivals and j units left.
  [[nodiscard]] double accept_probability(const DistributionModel& d, std::size_t t,
                                          std::size_t j) const;

 private:
  Kind kind_ = Kind::CeQuantiles;
  double threshold_ = 0.0;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  Family family_ = Family::Pareto;
  double gamma_ = 0.0;
  std::vector<double> accept_;  // (n + 1) x (k + 1), row-major in t
};

struct SimOptions {
  std::size_t threads = 0;           // 0: PROPHET_LAB_THREADS or hardware concurrency
  bool keep_replications = false;    // fill SimEstimate::replication_values
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::string distribution;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string policy;
  // Median of the per-block means; a robustness diagnostic for heavy tails.
  double median_of_means = 0.0;
  std::vector<double> replication_values;
};

// Replications are processed in fixed blocks of this size and merged in block
// order, so results do not depend on the thread count.
inline constexpr std::size_t kSimulationBlock = 4096;

std::size_t simulation_threads(std::size_t requested = 0);

// Replication r draws from SeededStream(seed, r).
SimEstimate run_policy(const DistributionModel& d, const PolicySpec& policy, std::size_t n,
                       std::size_t k, std::size_t reps, std::uint64_t seed,
                       const SimOptions& options = {});

SimEstimate run_prophet(const DistributionModel& d, std::size_t n, std::size_t k,
                        std::size_t reps, std::uint64_t seed, const SimOptions& options = {});

// Half-width used when comparing an estimate with an exact value: 4 standard
// errors, widened to 1e-3 relative when gamma >= 1/2 (infinite variance).
double mc_tolerance(const SimEstimate& estimate, double gamma);

}  // namespace prophet
