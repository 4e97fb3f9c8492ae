#include "prophet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace prophet {
namespace {

struct BlockStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

void require_instance(std::size_t n, std::size_t k, std::size_t reps) {
  if (k < 1 || k > n) throw ConfigurationError("simulation requires 1 <= k <= n");
  if (reps < 2) throw ConfigurationError("simulation requires at least 2 replications");
}

// Evaluates replications in blocks, possibly on several threads, and merges
// the block statistics in block order.
template <class Replicate>
SimEstimate simulate(std::size_t reps, std::uint64_t seed, const SimOptions& options,
                     Replicate replicate) {
  const std::size_t blocks = (reps + kSimulationBlock - 1) / kSimulationBlock;
  std::vector<BlockStats> stats(blocks);
  std::vector<double> values;
  if (options.keep_replications) values.resize(reps);

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kSimulationBlock;
    const std::size_t end = std::min(reps, begin + kSimulationBlock);
    BlockStats s;
    for (std::size_t r = begin; r < end; ++r) {
      SeededStream stream(seed, r);
      const double x = replicate(stream);
      if (options.keep_replications) values[r] = x;
      ++s.count;
      const double delta = x - s.mean;
      s.mean += delta / static_cast<double>(s.count);
      s.m2 += delta * (x - s.mean);
    }
    stats[b] = s;
  };

  const std::size_t threads = std::min(simulation_threads(options.threads), blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += threads) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  BlockStats total;
  for (const BlockStats& s : stats) {
    const double n_a = static_cast<double>(total.count);
    const double n_b = static_cast<double>(s.count);
    const double n_ab = n_a + n_b;
    const double delta = s.mean - total.mean;
    total.mean += delta * n_b / n_ab;
    total.m2 += s.m2 + delta * delta * n_a * n_b / n_ab;
    total.count += s.count;
  }

  SimEstimate est;
  est.mean = total.mean;
  est.replications = reps;
  est.seed = seed;
  const double variance = total.m2 / static_cast<double>(reps - 1);
  est.std_error = std::sqrt(variance / static_cast<double>(reps));

  std::vector<double> block_means;
  for (const BlockStats& s : stats) {
    if (s.count == kSimulationBlock || blocks == 1) block_means.push_back(s.mean);
  }
  if (block_means.empty()) block_means.push_back(total.mean);
  const std::size_t mid = block_means.size() / 2;
  std::nth_element(block_means.begin(), block_means.begin() + static_cast<std::ptrdiff_t>(mid),
                   block_means.end());
  double median = block_means[mid];
  if (block_means.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(block_means.begin(),
                                               block_means.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  est.median_of_means = median;
  est.replication_values = std::move(values);
  return est;
}

}  // namespace

PolicySpec PolicySpec::dp(const ValueTable& table) {
  if (table.policy() != Policy::DP) {
    throw ConfigurationError("PolicySpec::dp requires a DP value table");
  }
  PolicySpec p;
  p.kind_ = Kind::DpThresholds;
  p.n_ = table.n_max();
  p.k_ = table.k_max();
  p.family_ = table.distribution().family();
  p.gamma_ = table.distribution().gamma();
  p.accept_.assign((p.n_ + 1) * (p.k_ + 1), 0.0);
  const DistributionModel& d = table.distribution();
  // The decision with t arrivals left uses the threshold stored at (t, j),
  // which is derived from row t - 1.
  for (std::size_t t = 1; t <= p.n_; ++t) {
    if (!table.has_row(t) || table.row(t).j_lo > 1) {
      throw ConfigurationError("PolicySpec::dp requires a fully retained DP table");
    }
    const auto& row = table.row(t);
    for (std::size_t j = 1; j <= p.k_; ++j) {
      p.accept_[t * (p.k_ + 1) + j] = d.tail(row.thresholds[j]);
    }
  }
  return p;
}

PolicySpec PolicySpec::ce() { return PolicySpec{}; }

PolicySpec PolicySpec::fixed(double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0) {
    throw ConfigurationError("fixed threshold must be finite and >= 0");
  }
  PolicySpec p;
  p.kind_ = Kind::FixedThreshold;
  p.threshold_ = threshold;
  return p;
}

std::string PolicySpec::describe() const {
  switch (kind_) {
    case Kind::DpThresholds: return "dp_thresholds";
    case Kind::CeQuantiles: return "ce_quantiles";
    case Kind::FixedThreshold: {
      std::ostringstream out;
      out << "fixed_threshold(T=" << threshold_ << ")";
      return out.str();
    }
  }
  return "unknown";
}

bool PolicySpec::built_for(const DistributionModel& d) const noexcept {
  return kind_ != Kind::DpThresholds || (d.family() == family_ && d.gamma() == gamma_);
}

double PolicySpec::accept_probability(const DistributionModel& d, std::size_t t,
                                      std::size_t j) const {
  switch (kind_) {
    case Kind::DpThresholds: return accept_[t * (k_ + 1) + j];
    case Kind::CeQuantiles: return j >= t ? 1.0 : static_cast<double>(j) / static_cast<double>(t);
    case Kind::FixedThreshold: return d.tail(threshold_);
  }
  return 0.0;
}

std::size_t simulation_threads(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PROPHET_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(n, 1);
}

SimEstimate run_policy(const DistributionModel& d, const PolicySpec& policy, std::size_t n,
                       std::size_t k, std::size_t reps, std::uint64_t seed,
                       const SimOptions& options) {
  require_instance(n, k, reps);
  if (policy.kind() == PolicySpec::Kind::DpThresholds) {
    if (policy.table_n() != n || policy.table_k() != k) {
      throw ConfigurationError("DP thresholds were built for (n, k) = (" +
                               std::to_string(policy.table_n()) + ", " +
                               std::to_string(policy.table_k()) + "), not (" + std::to_string(n) +
                               ", " + std::to_string(k) + ")");
    }
    if (!policy.built_for(d)) {
      throw ConfigurationError("DP thresholds were built for a different distribution");
    }
  }
  if (policy.kind() == PolicySpec::Kind::FixedThreshold &&
      policy.fixed_threshold() > d.right_endpoint()) {
    throw ConfigurationError("fixed threshold lies above the right endpoint");
  }

  const double fixed_p =
      policy.kind() == PolicySpec::Kind::FixedThreshold ? d.tail(policy.fixed_threshold()) : 0.0;
  auto replicate = [&](SeededStream& stream) {
    double reward = 0.0;
    std::size_t j = k;
    for (std::size_t t = n; t >= 1 && j > 0; --t) {
      const double u = stream.next_uniform();
      const double p = policy.kind() == PolicySpec::Kind::FixedThreshold
                           ? fixed_p
                           : policy.accept_probability(d, t, j);
      if (u <= p) {
        reward += d.upper_quantile(u);
        --j;
      }
    }
    return reward;
  };
  SimEstimate est = simulate(reps, seed, options, replicate);
  est.distribution = d.describe();
  est.n = n;
  est.k = k;
  est.policy = policy.describe();
  return est;
}

SimEstimate run_prophet(const DistributionModel& d, std::size_t n, std::size_t k,
                        std::size_t reps, std::uint64_t seed, const SimOptions& options) {
  require_instance(n, k, reps);
  auto replicate = [&](SeededStream& stream) {
    // The k largest rewards are the k smallest upper-tail uniforms.
    thread_local std::vector<double> u;
    u.resize(n);
    for (double& x : u) x = stream.next_uniform();
    if (k < n) {
      std::nth_element(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k - 1), u.end());
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += d.upper_quantile(u[i]);
    return total;
  };
  SimEstimate est = simulate(reps, seed, options, replicate);
  est.distribution = d.describe();
  est.n = n;
  est.k = k;
  est.policy = "prophet";
  return est;
}

double mc_tolerance(const SimEstimate& estimate, double gamma) {
  const double base = 4.0 * estimate.std_error;
  if (gamma >= 0.5) return std::max(base, 1e-3 * std::abs(estimate.mean));
  return base;
}

}  // namespace prophet
