#pragma once

#include <cstddef>
#include <vector>

#include "prophet/values.hpp"

namespace prophet::asymptotics {

// Index gaps closer than this to 0 or 1 are rejected where the formulas
// divide by gamma or 1 - gamma.
inline constexpr double kBoundaryGuard = 1e-6;

// Sequences below are 1-based in meaning and 0-based in storage: element
// [k - 1] holds the k-th term.

// v_1 = 1; v_k - v_{k-1} is the positive root x of
// x^{1/g} + v_{k-1} x^{1/g - 1} - 1 = 0, equivalently x = v_k^{-g/(1-g)}.
// Defined for g < 1; g = 0 gives the limit v_k = k.
std::vector<double> v_sequence(double gamma, std::size_t k_max);

// v together with the solved increments delta_k = v_k - v_{k-1} (delta_1 = 1).
// The increments are kept as solved; recovering them by subtracting
// neighbouring v values loses digits once v_k is large.
struct VSolution {
  std::vector<double> v;
  std::vector<double> delta;
};
VSolution solve_v(double gamma, std::size_t k_max);

// |x^{1/g} + v_{k-1} x^{1/g-1} - 1| at x = delta_k.
double v_root_residual(double gamma, double v_prev, double delta);

// s_k = (1 - g) v_k^{1/(1-g)}.
std::vector<double> s_sequence(double gamma, std::size_t k_max);

// w_1 = 1/(1 - g^2); w_k = k/(k+g) w_{k-1} + k^{1-g} / ((k+g)(1-g)).
// Defined for -1 < g < 1.
std::vector<double> w_sequence(double gamma, std::size_t k_max);

// w_k = 1/(1-g) Gamma(k+1)/Gamma(k+1+g) sum_{r<=k} Gamma(r+g)/Gamma(r+1) r^{1-g}.
double w_closed_form(double gamma, std::size_t k);

// ACR_k = (1-g)^{1-g} v_k Gamma(k)/Gamma(k+1-g) for 0 < g < 1, and 1 for g <= 0.
double acr_dp(double gamma, std::size_t k);
double acr_from_v(double gamma, std::size_t k, double v_k);

// apx_k = Gamma(k)Gamma(k+1)/(Gamma(k+1-g)Gamma(k+1+g)) sum_{r<=k} Gamma(r+g)/Gamma(r+1) r^{1-g}
// for 0 < g < 1, and 1 for g <= 0.
double apx_ce(double gamma, std::size_t k);
// Same quantity as (1-g) Gamma(k)/Gamma(k+1-g) w_k.
double apx_from_w(double gamma, std::size_t k, double w_k);

enum class ExpansionTarget { DP, CE, CcDP, CcCE };

// 1 - g(1-g)/2 log k / k for the ratios; 1 + (1-g)/2 log k / k for the
// competition complexities.
double large_k_approx(double gamma, std::size_t k, ExpansionTarget target);

// Market-inflation factor ratio^{-1/g}; exactly 1 for g <= 0.
double competition_complexity(double gamma, std::size_t k, Policy policy);

struct AsymptoticReport {
  double gamma = 0.0;
  std::size_t k_max = 0;
  std::vector<double> v;
  std::vector<double> s;
  std::vector<double> w;
  std::vector<double> acr;
  std::vector<double> apx;
  std::vector<double> alpha;  // v_k / (1-g)^g
  std::vector<double> beta;   // w_k
};

AsymptoticReport asymptotic_report(double gamma, std::size_t k_max);

struct SweepRow {
  std::size_t k = 0;
  double worst_acr = 0.0;
  double gamma_star_dp = 0.0;
  double worst_apx = 0.0;
  double gamma_star_ce = 0.0;
  double worst_ce_over_dp = 0.0;
  double gamma_star_ratio = 0.0;
};

// Grid minima over gamma of ACR_k, apx_k and apx_k / ACR_k, one row per k in
// the order given. Ties resolve to the earliest grid point.
std::vector<SweepRow> worst_case_sweep(const std::vector<std::size_t>& k_list,
                                       const std::vector<double>& gamma_grid);

struct RegretConstantEstimate {
  std::vector<double> sequence;  // k^g (alpha_k - beta_k), k = 1..k_max
  double last = 0.0;
  double richardson = 0.0;  // 2 c_K - c_{K/2}
};

RegretConstantEstimate regret_constant_estimate(double gamma, std::size_t k_max);

struct ExpansionDiagnostics {
  std::size_t k = 0;
  double b = 0.0;  // k^a Gamma(k)/Gamma(k+a), a = 1 - g
  double p = 0.0;  // Gamma(k)Gamma(k+1)/(Gamma(k+1-g)Gamma(k+1+g))
  double s = 0.0;  // sum_{r<=k} Gamma(r+g)/Gamma(r+1) r^{1-g}
  double t = 0.0;  // s_k - k + (g/2) log k
  double dp_witness = 0.0;  // k |ACR_k - large_k_approx|
  double ce_witness = 0.0;  // k |apx_k - large_k_approx|
  double cc_witness = 0.0;  // k (C_k - 1 - (1-g)/2 log k / k), DP policy
};

ExpansionDiagnostics expansion_diagnostics(double gamma, std::size_t k);
// All k = 1..k_max in one O(k_max) pass.
std::vector<ExpansionDiagnostics> expansion_diagnostics_series(double gamma, std::size_t k_max);

}  // namespace prophet::asymptotics
