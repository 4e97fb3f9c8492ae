#include "prophet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prophet/numerics.hpp"

namespace prophet::asymptotics {
namespace {

using numerics::gamma_ratio;

// Drives the root solver down to adjacent doubles.
constexpr double kMachineTolerance = std::numeric_limits<double>::min();

void require_below_one(double gamma, const char* what) {
  if (!std::isfinite(gamma) || gamma >= 1.0 - kBoundaryGuard) {
    throw DomainError(std::string(what) + ": requires gamma < 1 (infinite mean otherwise), got " +
                      std::to_string(gamma));
  }
}

void require_open_unit(double gamma, const char* what) {
  if (!std::isfinite(gamma) || gamma < kBoundaryGuard || gamma > 1.0 - kBoundaryGuard) {
    throw DomainError(std::string(what) + ": requires gamma in (0, 1) away from the endpoints, got " +
                      std::to_string(gamma));
  }
}

void require_k(std::size_t k, const char* what) {
  if (k < 1) throw DomainError(std::string(what) + ": k must be >= 1");
}

double increment(double gamma, double v_prev) {
  if (gamma > 0.0 && gamma <= 0.5) {
    const double p = 1.0 / gamma;
    return numerics::solve_increasing_root(
        [&](double x) { return std::pow(x, p) + v_prev * std::pow(x, p - 1.0) - 1.0; }, {0.0, 1.0},
        kMachineTolerance);
  }
  // x = (v_prev + x)^e; x - (v_prev + x)^e is increasing for e < 0 and for
  // 0 < e < 1 when v_prev >= 1.
  const double e = -gamma / (1.0 - gamma);
  auto h = [&](double x) { return x - std::pow(v_prev + x, e); };
  double hi = 1.0;
  while (h(hi) <= 0.0) hi *= 2.0;
  return numerics::solve_increasing_root(h, {0.0, hi}, kMachineTolerance);
}

// Gamma(r+g)/Gamma(r+1) r^{1-g}
double sum_term(double gamma, std::size_t r) {
  const double rd = static_cast<double>(r);
  return gamma_ratio(rd + gamma, rd + 1.0) * std::pow(rd, 1.0 - gamma);
}

}  // namespace

VSolution solve_v(double gamma, std::size_t k_max) {
  require_below_one(gamma, "v_sequence");
  if (gamma != 0.0 && std::abs(gamma) < kBoundaryGuard) {
    throw DomainError("v_sequence: gamma too close to 0");
  }
  VSolution out;
  out.v.reserve(k_max);
  out.delta.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    double d = 1.0;
    if (k > 1 && gamma != 0.0) d = increment(gamma, out.v.back());
    out.delta.push_back(d);
    out.v.push_back(k == 1 ? 1.0 : out.v.back() + d);
  }
  return out;
}

std::vector<double> v_sequence(double gamma, std::size_t k_max) {
  return solve_v(gamma, k_max).v;
}

double v_root_residual(double gamma, double v_prev, double delta) {
  const double p = 1.0 / gamma;
  return std::abs(std::pow(delta, p) + v_prev * std::pow(delta, p - 1.0) - 1.0);
}

std::vector<double> s_sequence(double gamma, std::size_t k_max) {
  std::vector<double> s = v_sequence(gamma, k_max);
  for (double& x : s) x = (1.0 - gamma) * std::pow(x, 1.0 / (1.0 - gamma));
  return s;
}

std::vector<double> w_sequence(double gamma, std::size_t k_max) {
  require_below_one(gamma, "w_sequence");
  if (gamma <= -1.0) throw DomainError("w_sequence: requires gamma > -1");
  std::vector<double> w;
  w.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k == 1) {
      w.push_back(1.0 / ((1.0 - gamma) * (1.0 + gamma)));
      continue;
    }
    const double kd = static_cast<double>(k);
    w.push_back(kd / (kd + gamma) * w.back() +
                std::pow(kd, 1.0 - gamma) / ((kd + gamma) * (1.0 - gamma)));
  }
  return w;
}

double w_closed_form(double gamma, std::size_t k) {
  require_below_one(gamma, "w_closed_form");
  if (gamma <= -1.0) throw DomainError("w_closed_form: requires gamma > -1");
  require_k(k, "w_closed_form");
  double sum = 0.0;
  for (std::size_t r = 1; r <= k; ++r) sum += sum_term(gamma, r);
  const double kd = static_cast<double>(k);
  return gamma_ratio(kd + 1.0, kd + 1.0 + gamma) * sum / (1.0 - gamma);
}

double acr_from_v(double gamma, std::size_t k, double v_k) {
  if (gamma <= 0.0) return 1.0;
  const double kd = static_cast<double>(k);
  return std::pow(1.0 - gamma, 1.0 - gamma) * v_k * gamma_ratio(kd, kd + 1.0 - gamma);
}

double acr_dp(double gamma, std::size_t k) {
  require_below_one(gamma, "acr_dp");
  require_k(k, "acr_dp");
  if (gamma <= 0.0) return 1.0;
  require_open_unit(gamma, "acr_dp");
  return acr_from_v(gamma, k, v_sequence(gamma, k).back());
}

double apx_from_w(double gamma, std::size_t k, double w_k) {
  if (gamma <= 0.0) return 1.0;
  const double kd = static_cast<double>(k);
  return (1.0 - gamma) * gamma_ratio(kd, kd + 1.0 - gamma) * w_k;
}

double apx_ce(double gamma, std::size_t k) {
  require_below_one(gamma, "apx_ce");
  require_k(k, "apx_ce");
  if (gamma <= 0.0) return 1.0;
  require_open_unit(gamma, "apx_ce");
  const double kd = static_cast<double>(k);
  double sum = 0.0;
  for (std::size_t r = 1; r <= k; ++r) sum += sum_term(gamma, r);
  return gamma_ratio(kd, kd + 1.0 - gamma) * gamma_ratio(kd + 1.0, kd + 1.0 + gamma) * sum;
}

double large_k_approx(double gamma, std::size_t k, ExpansionTarget target) {
  require_k(k, "large_k_approx");
  const double kd = static_cast<double>(k);
  const double lk = std::log(kd) / kd;
  switch (target) {
    case ExpansionTarget::DP:
    case ExpansionTarget::CE:
      return 1.0 - gamma * (1.0 - gamma) / 2.0 * lk;
    case ExpansionTarget::CcDP:
    case ExpansionTarget::CcCE:
      return 1.0 + (1.0 - gamma) / 2.0 * lk;
  }
  return 1.0;
}

double competition_complexity(double gamma, std::size_t k, Policy policy) {
  require_below_one(gamma, "competition_complexity");
  require_k(k, "competition_complexity");
  if (gamma <= 0.0) return 1.0;
  const double ratio = policy == Policy::DP ? acr_dp(gamma, k) : apx_ce(gamma, k);
  return std::pow(ratio, -1.0 / gamma);
}

AsymptoticReport asymptotic_report(double gamma, std::size_t k_max) {
  AsymptoticReport r;
  r.gamma = gamma;
  r.k_max = k_max;
  r.v = v_sequence(gamma, k_max);
  r.w = w_sequence(gamma, k_max);
  const double alpha_scale = std::pow(1.0 - gamma, gamma);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double v = r.v[k - 1];
    const double w = r.w[k - 1];
    r.s.push_back((1.0 - gamma) * std::pow(v, 1.0 / (1.0 - gamma)));
    r.acr.push_back(acr_from_v(gamma, k, v));
    r.apx.push_back(apx_from_w(gamma, k, w));
    r.alpha.push_back(v / alpha_scale);
    r.beta.push_back(w);
  }
  return r;
}

std::vector<SweepRow> worst_case_sweep(const std::vector<std::size_t>& k_list,
                                       const std::vector<double>& gamma_grid) {
  if (k_list.empty()) throw ConfigurationError("worst_case_sweep: empty k list");
  if (gamma_grid.empty()) throw ConfigurationError("worst_case_sweep: empty gamma grid");
  for (double g : gamma_grid) require_open_unit(g, "worst_case_sweep");
  std::size_t k_max = 0;
  for (std::size_t k : k_list) {
    require_k(k, "worst_case_sweep");
    k_max = std::max(k_max, k);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<SweepRow> rows(k_list.size());
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    rows[i].k = k_list[i];
    rows[i].worst_acr = rows[i].worst_apx = rows[i].worst_ce_over_dp = kInf;
  }
  for (double g : gamma_grid) {
    const std::vector<double> v = v_sequence(g, k_max);
    const std::vector<double> w = w_sequence(g, k_max);
    for (SweepRow& row : rows) {
      const double acr = acr_from_v(g, row.k, v[row.k - 1]);
      const double apx = apx_from_w(g, row.k, w[row.k - 1]);
      const double ratio = apx / acr;
      if (acr < row.worst_acr) {
        row.worst_acr = acr;
        row.gamma_star_dp = g;
      }
      if (apx < row.worst_apx) {
        row.worst_apx = apx;
        row.gamma_star_ce = g;
      }
      if (ratio < row.worst_ce_over_dp) {
        row.worst_ce_over_dp = ratio;
        row.gamma_star_ratio = g;
      }
    }
  }
  return rows;
}

RegretConstantEstimate regret_constant_estimate(double gamma, std::size_t k_max) {
  require_k(k_max, "regret_constant_estimate");
  RegretConstantEstimate est;
  if (gamma == 0.0) {
    est.sequence.assign(k_max, 0.0);
    return est;
  }
  const std::vector<double> v = v_sequence(gamma, k_max);
  const std::vector<double> w = w_sequence(gamma, k_max);
  const double alpha_scale = std::pow(1.0 - gamma, gamma);
  est.sequence.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    est.sequence.push_back(std::pow(static_cast<double>(k), gamma) *
                           (v[k - 1] / alpha_scale - w[k - 1]));
  }
  est.last = est.sequence.back();
  est.richardson = k_max >= 2 ? 2.0 * est.last - est.sequence[k_max / 2 - 1] : est.last;
  return est;
}

std::vector<ExpansionDiagnostics> expansion_diagnostics_series(double gamma, std::size_t k_max) {
  require_open_unit(gamma, "expansion_diagnostics");
  require_k(k_max, "expansion_diagnostics");
  const std::vector<double> v = v_sequence(gamma, k_max);
  const std::vector<double> w = w_sequence(gamma, k_max);
  const double a = 1.0 - gamma;
  std::vector<ExpansionDiagnostics> out;
  out.reserve(k_max);
  double sum = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    sum += sum_term(gamma, k);
    ExpansionDiagnostics d;
    d.k = k;
    d.b = std::exp(a * std::log(kd) + numerics::log_gamma_ratio(kd, kd + a));
    d.p = gamma_ratio(kd, kd + 1.0 - gamma) * gamma_ratio(kd + 1.0, kd + 1.0 + gamma);
    d.s = sum;
    const double s_k = a * std::pow(v[k - 1], 1.0 / a);
    d.t = s_k - kd + gamma / 2.0 * std::log(kd);
    const double acr = acr_from_v(gamma, k, v[k - 1]);
    const double apx = apx_from_w(gamma, k, w[k - 1]);
    const double approx = large_k_approx(gamma, k, ExpansionTarget::DP);
    d.dp_witness = kd * std::abs(acr - approx);
    d.ce_witness = kd * std::abs(apx - approx);
    d.cc_witness =
        kd * (std::pow(acr, -1.0 / gamma) - large_k_approx(gamma, k, ExpansionTarget::CcDP));
    out.push_back(d);
  }
  return out;
}

ExpansionDiagnostics expansion_diagnostics(double gamma, std::size_t k) {
  return expansion_diagnostics_series(gamma, k).back();
}

}  // namespace prophet::asymptotics
