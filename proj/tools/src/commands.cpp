#include "prophet_lab/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "prophet/asymptotics.hpp"
#include "prophet/errors.hpp"
#include "prophet/simulation.hpp"
#include "prophet/values.hpp"

namespace prophet::lab {
namespace {

namespace pa = prophet::asymptotics;

std::uint64_t u64(std::size_t x) { return static_cast<std::uint64_t>(x); }

}  // namespace

Table cmd_table1(const RunConfig& config) {
  Table t;
  t.columns = {"k", "worst_acr_dp", "gamma_star_dp", "worst_apx_ce", "gamma_star_ce",
               "worst_ce_over_dp", "gamma_star_ratio"};
  if (config.gamma_grid.max_step > 0.05) {
    t.warnings.push_back("gamma_grid step " + format_number(config.gamma_grid.max_step) +
                         " is coarser than 0.05; minima at the gamma = 0.999 boundary may be missed");
  }
  const auto rows = pa::worst_case_sweep(config.k_list, config.gamma_grid.values);
  for (const auto& r : rows) {
    t.add_row({u64(r.k), r.worst_acr, r.gamma_star_dp, r.worst_apx, r.gamma_star_ce,
               r.worst_ce_over_dp, r.gamma_star_ratio});
  }
  return t;
}

Table cmd_heatmap(const RunConfig& config) {
  Table t;
  t.columns = {"k", "gamma", "acr_dp", "apx_ce", "ratio_ce_dp"};
  const auto& grid = config.gamma_grid.values;
  std::vector<std::size_t> ks = config.k_list;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const std::size_t k_max = ks.back();

  // cells[g][i] holds (acr, apx) for gamma grid[g] and k = ks[i].
  std::vector<std::vector<std::pair<double, double>>> cells(grid.size());
  parallel_for(grid.size(), [&](std::size_t gi) {
    const double g = grid[gi];
    auto& out = cells[gi];
    out.resize(ks.size(), {1.0, 1.0});
    if (g <= 0.0) return;
    const auto v = pa::v_sequence(g, k_max);
    const auto w = pa::w_sequence(g, k_max);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out[i] = {pa::acr_from_v(g, ks[i], v[ks[i] - 1]), pa::apx_from_w(g, ks[i], w[ks[i] - 1])};
    }
  });
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const auto [acr, apx] = cells[gi][i];
      t.add_row({u64(ks[i]), grid[gi], acr, apx, apx / acr});
    }
  }
  return t;
}

Table cmd_regret(const RunConfig& config) {
  if (config.distribution.family != Family::Pareto) {
    throw ConfigurationError(
        "config field 'distribution.family': regret runs require the pareto family so that the "
        "recursions stay exact");
  }
  const DistributionModel d = config.distribution.model();
  const double g = d.gamma();
  Table t;
  t.columns = {"alpha", "n", "k", "v_dp", "v_ce", "gap", "gap_scaled"};

  struct Job {
    double alpha;
    std::size_t n;
    std::size_t k;
    double dp = 0.0;
    double ce = 0.0;
  };
  std::vector<Job> jobs;
  for (double a : config.alpha) {
    for (std::size_t n : config.n_grid) {
      const std::size_t k = a >= 1.0 ? n
                                     : static_cast<std::size_t>(
                                           std::floor(std::pow(static_cast<double>(n), a) + 1e-9));
      if (k == 0) {
        t.warnings.push_back("alpha " + format_number(a) + ", n " + std::to_string(n) +
                             ": k(n) = 0, row skipped");
        continue;
      }
      jobs.push_back({a, n, std::min(k, n)});
    }
  }
  // Larger cells first so the longest recursions start early.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return jobs[a].n * jobs[a].k > jobs[b].n * jobs[b].k;
  });
  parallel_for(order.size(), [&](std::size_t i) {
    Job& c = jobs[order[i]];
    c.dp = dp_table(d, c.n, c.k).final_value();
    c.ce = ce_table(d, c.n, c.k).final_value();
  });
  for (const Job& c : jobs) {
    const double gap = c.dp - c.ce;
    const double scale = std::pow(static_cast<double>(c.n) / static_cast<double>(c.k), g);
    t.add_row({c.alpha, u64(c.n), u64(c.k), c.dp, c.ce, gap, gap / scale});
  }
  return t;
}

Table cmd_convergence(const RunConfig& config) {
  const DistributionModel d = config.distribution.model();
  const double g = d.gamma();
  Table t;
  t.columns = {"n", "k", "v_dp_over_u", "v_ce_over_u", "ratio_dp", "ratio_ce",
               "target_acr", "target_apx", "gap_dp", "prophet_method"};
  struct Job {
    std::size_t n;
    std::size_t k;
    double dp = 0.0;
    double ce = 0.0;
    double prophet = 0.0;
    std::string method;
    std::string warning;
  };
  std::vector<Job> jobs;
  for (std::size_t n : config.n_grid) {
    for (std::size_t k : config.k_list) {
      if (k > n) {
        t.warnings.push_back("n " + std::to_string(n) + ", k " + std::to_string(k) +
                             ": k exceeds n, row skipped");
        continue;
      }
      jobs.push_back({n, k, 0.0, 0.0, 0.0, {}, {}});
    }
  }
  parallel_for(jobs.size(), [&](std::size_t i) {
    Job& c = jobs[i];
    c.dp = dp_table(d, c.n, c.k).final_value();
    c.ce = ce_table(d, c.n, c.k).final_value();
    try {
      const ProphetValue p = prophet_value(d, c.n, c.k);
      c.prophet = p.value;
      c.method = to_string(p.method);
    } catch (const ConvergenceError&) {
      c.prophet = prophet_asymptotic(d, c.n, c.k);
      c.method = "asymptotic";
      c.warning = "n " + std::to_string(c.n) + ", k " + std::to_string(c.k) +
                  ": prophet quadrature did not converge, leading-order approximation used";
    }
  });
  for (const Job& c : jobs) {
    if (!c.warning.empty()) t.warnings.push_back(c.warning);
    const double u = d.evt_scales(c.n).u_n;
    const double target_acr = g > 0.0 ? pa::acr_dp(g, c.k) : 1.0;
    const double target_apx = g > 0.0 ? pa::apx_ce(g, c.k) : 1.0;
    t.add_row({u64(c.n), u64(c.k), c.dp / u, c.ce / u, c.dp / c.prophet, c.ce / c.prophet,
               target_acr, target_apx, c.prophet - c.dp, c.method});
  }
  return t;
}

Table cmd_competition(const RunConfig& config) {
  Table t;
  t.columns = {"k", "gamma", "cc_dp", "cc_ce", "cc_large_k_dp"};
  for (std::size_t k : config.k_list) {
    for (double g : config.gamma_grid.values) {
      const double dp = pa::competition_complexity(g, k, Policy::DP);
      const double ce = pa::competition_complexity(g, k, Policy::CE);
      const double approx = g > 0.0 ? pa::large_k_approx(g, k, pa::ExpansionTarget::CcDP) : 1.0;
      t.add_row({u64(k), g, dp, ce, approx});
    }
  }
  return t;
}

Table cmd_simulate(const RunConfig& config) {
  const DistributionModel d = config.distribution.model();
  const std::size_t n = config.n;
  Table t;
  t.columns = {"policy", "n", "k", "mean", "std_error", "median_of_means",
               "exact", "z_score", "replications", "seed"};
  SimOptions options;
  options.keep_replications = config.dump_path.has_value();

  std::ofstream dump;
  if (config.dump_path) {
    dump.open(*config.dump_path);
    if (!dump) throw ConfigurationError("config field 'dump_path': cannot write '" + *config.dump_path + "'");
    dump << "policy,k,replication,value\n";
  }
  auto record = [&](const SimEstimate& est, const std::string& name, double exact) {
    const double z = est.std_error > 0.0 ? (est.mean - exact) / est.std_error : 0.0;
    t.add_row({name, u64(n), u64(est.k), est.mean, est.std_error, est.median_of_means, exact, z,
               u64(est.replications), est.seed});
    if (dump.is_open()) {
      for (std::size_t r = 0; r < est.replication_values.size(); ++r) {
        dump << name << ',' << est.k << ',' << r << ',' << format_number(est.replication_values[r]) << '\n';
      }
    }
  };

  for (std::size_t k : config.k_list) {
    const ValueTable dp = dp_table(d, n, k, TableOptions::full());
    record(run_policy(d, PolicySpec::dp(dp), n, k, config.reps, config.seed, options), "dp",
           dp.final_value());
    record(run_policy(d, PolicySpec::ce(), n, k, config.reps, config.seed, options), "ce",
           ce_table(d, n, k).final_value());
    const double T = d.upper_quantile(static_cast<double>(k) / static_cast<double>(n));
    record(run_policy(d, PolicySpec::fixed(T), n, k, config.reps, config.seed, options), "fixed",
           fixed_threshold_value(d, n, k, T));
    record(run_prophet(d, n, k, config.reps, config.seed, options), "prophet",
           prophet_value(d, n, k).value);
  }
  if (d.gamma() >= 0.5) {
    t.warnings.push_back("gamma >= 0.5: rewards have infinite variance, so std_error understates the "
                         "spread; compare median_of_means as a robustness check");
  }
  return t;
}

}  // namespace prophet::lab
