#include <cmath>
#include <functional>
#include <random>

#include "prophet/asymptotics.hpp"
#include "prophet/numerics.hpp"
#include "prophet/simulation.hpp"
#include "prophet/values.hpp"
#include "prophet_lab/commands.hpp"

namespace prophet::lab {
namespace {

namespace nm = prophet::numerics;
namespace pa = prophet::asymptotics;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

class Suite {
 public:
  explicit Suite(double scale) : scale_(scale) {}

  // Runs fn, which returns the measured residual. An exception counts as a
  // failure with an infinite residual.
  void check(const std::string& name, const std::string& module, double tolerance,
             const std::function<double()>& fn) {
    CheckResult r;
    r.name = name;
    r.module = module;
    r.tolerance = tolerance * scale_;
    try {
      r.measured = fn();
    } catch (const std::exception& e) {
      r.measured = INFINITY;
      r.detail = e.what();
    }
    r.passed = std::isfinite(r.measured) && r.measured <= r.tolerance;
    checks_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  double scale_;
  std::vector<CheckResult> checks_;
};

std::vector<DistributionModel> sample_laws() {
  return {DistributionModel::pareto(0.3), DistributionModel::pareto(0.8), DistributionModel::frechet(0.5),
          DistributionModel::exponential(), DistributionModel::uniform(),
          DistributionModel::bounded_power(-0.4, 2.0)};
}

double z_distance(const SimEstimate& est, double exact) {
  return std::abs(est.mean - exact) / est.std_error;
}

}  // namespace

std::size_t VerifyReport::failures() const {
  std::size_t f = 0;
  for (const auto& c : checks) f += c.passed ? 0 : 1;
  return f;
}

Table VerifyReport::to_table() const {
  Table t;
  t.columns = {"check", "module", "measured", "tolerance", "passed"};
  for (const auto& c : checks) t.add_row({c.name, c.module, c.measured, c.tolerance, c.passed});
  return t;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = "verify";
  doc["passed"] = checks.size() - failures();
  doc["failed"] = failures();
  auto list = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["module"] = c.module;
    if (std::isfinite(c.measured)) {
      j["measured"] = c.measured;
    } else {
      j["measured"] = nullptr;
    }
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(std::move(j));
  }
  doc["checks"] = std::move(list);
  auto cg = nlohmann::ordered_json::array();
  for (const auto& e : c_gamma) {
    cg.push_back({{"gamma", e.gamma}, {"k_max", e.k_max}, {"last", e.last}, {"richardson", e.richardson}});
  }
  doc["c_gamma_estimates"] = std::move(cg);
  return doc;
}

VerifyReport cmd_verify(const RunConfig& config) {
  Suite s(config.tolerance_scale);

  s.check("log_gamma_half", "numerics", 1e-14,
          [] { return std::abs(nm::log_gamma(0.5) - 0.5 * std::log(M_PI)); });
  s.check("log_gamma_vs_lgamma", "numerics", 1e-13, [] {
    double worst = 0.0;
    for (double x = 0.05; x < 300.0; x *= 1.37) {
      worst = std::max(worst, std::abs(nm::log_gamma(x) - std::lgamma(x)) / std::max(1.0, std::abs(std::lgamma(x))));
    }
    return worst;
  });
  s.check("gamma_ratio_large_arguments", "numerics", 1e-12,
          [] { return rel(nm::gamma_ratio(1e7 + 0.5, 1e7), 3162.277620639908826947); });
  s.check("digamma_harmonic_identity", "numerics", 1e-13, [] {
    double worst = 0.0;
    for (std::size_t m : {1u, 2u, 10u, 1000u}) {
      worst = std::max(worst, std::abs(nm::digamma(m + 1.0) + nm::kEulerGamma - nm::harmonic(m)));
    }
    return worst;
  });
  s.check("root_solver_cubic", "numerics", 1e-13, [] {
    const double r = nm::solve_increasing_root([](double x) { return x * x * x - 2.0; }, {0.0, 2.0});
    return std::abs(r - std::cbrt(2.0));
  });
  s.check("quadrature_gaussian_tail", "numerics", 1e-10, [] {
    const auto q = nm::integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, INFINITY, 1e-12);
    return std::abs(q.value - std::sqrt(M_PI) / 2.0);
  });

  s.check("quantile_cdf_roundtrip", "distributions", 1e-12, [] {
    double worst = 0.0;
    for (const auto& d : sample_laws()) {
      for (double p = 0.01; p < 0.995; p += 0.01) worst = std::max(worst, std::abs(d.cdf(d.quantile(p)) - p));
    }
    return worst;
  });
  s.check("tail_integral_vs_quadrature", "distributions", 1e-8, [] {
    double worst = 0.0;
    for (const auto& d : sample_laws()) {
      for (double p : {0.5, 0.1, 0.001}) {
        const double t = d.upper_quantile(p);
        const double hi = d.bounded() ? d.right_endpoint() : INFINITY;
        nm::QuadratureOptions opts;
        if (d.gamma() > 0.0) opts.decay_exponent = 1.0 / d.gamma();
        opts.tail_scale = std::max(t, 1.0);
        const auto q = nm::integrate_adaptive([&](double x) { return d.tail(x); }, t, hi, 1e-11, opts);
        worst = std::max(worst, rel(d.tail_integral(t), q.value));
      }
    }
    return worst;
  });
  s.check("pareto_evt_scale", "distributions", 1e-12, [] {
    const auto d = DistributionModel::pareto(0.4);
    return rel(d.evt_scales(1000).u_n, std::pow(1000.0, 0.4));
  });
  s.check("sampling_ks_distance", "distributions", 0.01, [&] {
    const auto d = DistributionModel::frechet(0.5);
    SeededStream stream(config.seed, 0);
    auto x = d.sample(stream, 50000);
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double f = d.cdf(x[i]);
      ks = std::max({ks, std::abs(f - double(i) / x.size()), std::abs(f - double(i + 1) / x.size())});
    }
    return ks;
  });

  const auto pareto = DistributionModel::pareto(0.5);
  s.check("dp_two_period_pareto", "values", 1e-12,
          [&] { return std::abs(dp_table(pareto, 2, 1).final_value() - 2.5); });
  s.check("ce_two_period_pareto", "values", 1e-12,
          [&] { return std::abs(ce_table(pareto, 2, 1).final_value() - (1.0 + std::sqrt(2.0))); });
  s.check("prophet_two_period_pareto", "values", 1e-12,
          [&] { return std::abs(prophet_value(pareto, 2, 1).value - 8.0 / 3.0); });
  s.check("dominance_fixed_ce_dp_prophet", "values", 0.0, [&] {
    std::mt19937_64 rng(config.seed);
    const auto laws = sample_laws();
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
      const auto& d = laws[rng() % laws.size()];
      const std::size_t n = 1 + rng() % 120;
      const std::size_t k = 1 + rng() % std::min<std::size_t>(n, 10);
      const double T = d.upper_quantile(std::uniform_real_distribution<double>(0.01, 1.0)(rng));
      const double fixed = fixed_threshold_value(d, n, k, T);
      const double dp = dp_table(d, n, k).final_value();
      const double ce = ce_table(d, n, k).final_value();
      const double mu = prophet_value(d, n, k).value;
      const double slack = 1e-10 * mu;
      worst = std::max({worst, fixed - dp - slack, ce - dp - slack, dp - mu - slack});
    }
    return std::max(worst, 0.0);
  });
  s.check("banded_matches_full_table", "values", 0.0, [&] {
    double worst = 0.0;
    for (const auto& d : sample_laws()) {
      const double a = dp_table(d, 80, 7).final_value();
      const double b = dp_table(d, 80, 7, TableOptions::full()).final_value();
      worst = std::max(worst, std::abs(a - b));
    }
    return worst;
  });
  s.check("exponential_order_statistics", "values", 1e-8, [] {
    const auto e = DistributionModel::exponential();
    const std::size_t n = 10000;
    const double exact = 3.0 * nm::harmonic(n) - (0.0 + 1.0 + 1.5);
    return rel(prophet_value(e, n, 3).value, exact);
  });
  s.check("ce_accepts_all_when_k_equals_n", "values", 1e-12, [] {
    double worst = 0.0;
    for (const auto& d : sample_laws()) worst = std::max(worst, rel(ce_table(d, 40, 40).final_value(), 40 * d.mean()));
    return worst;
  });
  s.check("pareto_dp_ratio_limit", "values", 0.01, [&] {
    const std::size_t n = 100000;
    return std::abs(dp_table(pareto, n, 1).final_value() / prophet_value(pareto, n, 1).value -
                    std::sqrt(2.0 / M_PI));
  });
  s.check("uniform_dp_ratio_near_one", "values", 1e-3, [] {
    const auto u = DistributionModel::uniform();
    return 1.0 - dp_table(u, 10000, 1).final_value() / prophet_value(u, 10000, 1).value;
  });
  s.check("exponential_gap_law_k2", "values", 0.05, [] {
    const auto e = DistributionModel::exponential();
    const std::size_t n = 100000;
    const double gap = prophet_value(e, n, 2).value - dp_table(e, n, 2).final_value();
    return std::abs(gap - (2.0 * nm::kEulerGamma - 1.0 + std::log(2.0)));
  });

  s.check("v_root_residuals", "asymptotics", 1e-12, [] {
    double worst = 0.0;
    for (double g : {0.1, 0.5, 0.9}) {
      const auto sol = pa::solve_v(g, 1000);
      for (std::size_t k = 2; k <= 1000; ++k) {
        worst = std::max(worst, pa::v_root_residual(g, sol.v[k - 2], sol.delta[k - 1]));
      }
    }
    return worst;
  });
  s.check("v_increment_identity", "asymptotics", 1e-10, [] {
    double worst = 0.0;
    for (double g : {0.1, 0.5, 0.9}) {
      const auto sol = pa::solve_v(g, 1000);
      for (std::size_t k = 2; k <= 1000; ++k) {
        worst = std::max(worst, rel(sol.delta[k - 1], std::pow(sol.v[k - 1], -g / (1.0 - g))));
      }
    }
    return worst;
  });
  s.check("w_recursion_vs_closed_form", "asymptotics", 1e-9, [] {
    double worst = 0.0;
    for (double g = 0.1; g < 0.95; g += 0.1) {
      const auto w = pa::w_sequence(g, 500);
      for (std::size_t k : {1u, 10u, 100u, 500u}) worst = std::max(worst, rel(w[k - 1], pa::w_closed_form(g, k)));
    }
    return worst;
  });
  s.check("single_unit_acr_closed_form", "asymptotics", 1e-10, [] {
    double worst = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double g = i / 1000.0;
      const double expected = std::min(std::pow(1.0 - g, -g) / std::tgamma(1.0 - g), 1.0);
      worst = std::max(worst, std::abs(pa::acr_dp(g, 1) - expected));
    }
    return worst;
  });
  s.check("worst_case_k1_acr", "asymptotics", 0.005, [] {
    std::vector<double> grid;
    for (int i = 1; i < 1000; ++i) grid.push_back(i / 1000.0);
    return std::abs(pa::worst_case_sweep({1}, grid)[0].worst_acr - 0.776);
  });
  s.check("ce_ratio_below_dp_ratio", "asymptotics", 0.0, [] {
    double worst = 0.0;
    for (double g : {0.05, 0.3, 0.6, 0.95}) {
      const auto rep = pa::asymptotic_report(g, 200);
      for (std::size_t k = 0; k < 200; ++k) worst = std::max(worst, rep.apx[k] - rep.acr[k] * (1 + 1e-12));
    }
    return worst;
  });
  s.check("competition_complexity_half", "asymptotics", 1e-9,
          [] { return std::abs(pa::competition_complexity(0.5, 1, Policy::DP) - M_PI / 2.0); });
  s.check("competition_complexity_light_tails", "asymptotics", 0.0, [] {
    double worst = 0.0;
    for (double g : {-1.0, -0.5, 0.0}) {
      worst = std::max({worst, std::abs(pa::competition_complexity(g, 7, Policy::DP) - 1.0),
                        std::abs(pa::competition_complexity(g, 7, Policy::CE) - 1.0)});
    }
    return worst;
  });

  const std::size_t reps = 200000;
  s.check("mc_dp_vs_recursion", "simulation", 4.0, [&] {
    const auto d = DistributionModel::exponential();
    const auto table = dp_table(d, 30, 3, TableOptions::full());
    return z_distance(run_policy(d, PolicySpec::dp(table), 30, 3, reps, config.seed), table.final_value());
  });
  s.check("mc_ce_vs_recursion", "simulation", 4.0, [&] {
    const auto d = DistributionModel::pareto(0.3);
    return z_distance(run_policy(d, PolicySpec::ce(), 25, 2, reps, config.seed + 1),
                      ce_table(d, 25, 2).final_value());
  });
  s.check("mc_prophet_vs_quadrature", "simulation", 4.0, [&] {
    const auto d = DistributionModel::uniform();
    return z_distance(run_prophet(d, 20, 4, reps, config.seed + 2), prophet_value(d, 20, 4).value);
  });
  s.check("mc_thread_count_invariance", "simulation", 0.0, [&] {
    const auto d = DistributionModel::frechet(0.3);
    const auto a = run_policy(d, PolicySpec::ce(), 20, 2, 20000, config.seed, SimOptions{1, false});
    const auto b = run_policy(d, PolicySpec::ce(), 20, 2, 20000, config.seed, SimOptions{3, false});
    return std::abs(a.mean - b.mean) + std::abs(a.std_error - b.std_error);
  });

  VerifyReport report;
  report.checks = s.take();
  for (double g : {0.25, 0.5, 0.75}) {
    const std::size_t k_max = 4096;
    const auto est = pa::regret_constant_estimate(g, k_max);
    report.c_gamma.push_back({g, k_max, est.last, est.richardson});
  }
  return report;
}

}  // namespace prophet::lab
