#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "prophet_lab/config.hpp"
#include "prophet_lab/output.hpp"

namespace prophet::lab {

// k, worst_acr_dp, gamma_star_dp, worst_apx_ce, gamma_star_ce,
// worst_ce_over_dp, gamma_star_ratio
Table cmd_table1(const RunConfig& config);

// k, gamma, acr_dp, apx_ce, ratio_ce_dp
Table cmd_heatmap(const RunConfig& config);

// alpha, n, k, v_dp, v_ce, gap, gap_scaled with k = floor(n^alpha)
Table cmd_regret(const RunConfig& config);

// n, k, v_dp_over_u, v_ce_over_u, ratio_dp, ratio_ce, target_acr,
// target_apx, gap_dp, prophet_method
Table cmd_convergence(const RunConfig& config);

// k, gamma, cc_dp, cc_ce, cc_large_k_dp
Table cmd_competition(const RunConfig& config);

// policy, n, k, mean, std_error, median_of_means, exact, z_score,
// replications, seed. With dump_path set, per-replication values are
// written there as policy, k, replication, value.
Table cmd_simulate(const RunConfig& config);

struct CheckResult {
  std::string name;
  std::string module;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct CGammaEstimate {
  double gamma = 0.0;
  std::size_t k_max = 0;
  double last = 0.0;
  double richardson = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<CGammaEstimate> c_gamma;

  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] Table to_table() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

// Runs the cross-module check suite. Each check passes when
// measured <= tolerance * config.tolerance_scale.
VerifyReport cmd_verify(const RunConfig& config);

// Evaluates fn(i) for i in [0, count) on up to simulation_threads() workers.
// Results land in caller-owned slots, so output order never depends on
// scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn);

}  // namespace prophet::lab

#include "prophet_lab/parallel.inl"
