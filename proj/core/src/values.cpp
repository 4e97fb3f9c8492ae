#include "prophet/values.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "prophet/numerics.hpp"

namespace prophet {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_budget(std::size_t n, std::size_t k, const char* what) {
  if (k < 1 || n < 1) throw DomainError(std::string(what) + ": requires 1 <= k <= n");
  if (k > n) {
    throw DomainError(std::string(what) + ": k = " + std::to_string(k) + " exceeds n = " +
                      std::to_string(n));
  }
}

// Runs a one-row recursion over t = 1..n. step(t, j, V(t-1,j-1), V(t-1,j), threshold&)
// returns V(t,j) for 1 <= j <= min(k, t); states with j > t equal V(t, t).
template <class Step>
ValueTable run_recursion(Policy policy, const DistributionModel& d, std::size_t n, std::size_t k,
                         const TableOptions& options, Step step) {
  const bool banded = options.retain == TableOptions::Retain::FinalOnly;
  std::vector<char> keep;
  if (options.retain == TableOptions::Retain::Rows) {
    keep.assign(n + 1, 0);
    for (std::size_t t : options.rows) {
      if (t > n) throw DomainError("requested row " + std::to_string(t) + " exceeds n");
      keep[t] = 1;
    }
  }
  auto retained = [&](std::size_t t) {
    switch (options.retain) {
      case TableOptions::Retain::Full: return true;
      case TableOptions::Retain::Rows: return t == n || keep[t] != 0;
      case TableOptions::Retain::FinalOnly: return t == n;
    }
    return false;
  };

  const double accept_all = d.left_endpoint();
  std::vector<double> v(k + 1, 0.0);
  std::vector<double> thr(k + 1, kNaN);
  std::vector<ValueTable::Row> rows;

  auto snapshot = [&](std::size_t t, std::size_t lo) {
    ValueTable::Row row;
    row.t = t;
    row.j_lo = lo <= 1 ? 0 : lo;
    row.values = v;
    row.thresholds = thr;
    row.values[0] = 0.0;
    row.thresholds[0] = kNaN;
    const std::size_t hi = std::min(k, t);
    for (std::size_t j = hi + 1; j <= k; ++j) {
      row.values[j] = row.values[hi];
      row.thresholds[j] = t == 0 ? kNaN : accept_all;
    }
    rows.push_back(std::move(row));
  };

  if (retained(0)) snapshot(0, 0);
  for (std::size_t t = 1; t <= n; ++t) {
    const std::size_t hi = std::min(k, t);
    std::size_t lo = 1;
    if (banded && k + t > n + 1) lo = k + t - n;  // states that can still reach (n, k)
    if (t <= k) v[t] = v[t - 1];
    for (std::size_t j = hi; j >= lo; --j) {
      v[j] = step(t, j, v[j - 1], v[j], thr[j]);
    }
    if (retained(t)) snapshot(t, lo);
  }
  return {policy, d, n, k, std::move(rows)};
}

void append_number(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  out += buf;
}

}  // namespace

std::string to_string(Policy policy) { return policy == Policy::DP ? "dp" : "ce"; }

std::string to_string(ProphetValue::Method method) {
  switch (method) {
    case ProphetValue::Method::ClosedForm: return "closed_form";
    case ProphetValue::Method::Quadrature: return "quadrature";
    case ProphetValue::Method::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

ValueTable::ValueTable(Policy policy, DistributionModel distribution, std::size_t n_max,
                       std::size_t k_max, std::vector<Row> rows)
    : policy_(policy),
      distribution_(distribution),
      n_max_(n_max),
      k_max_(k_max),
      rows_(std::move(rows)) {}

bool ValueTable::has_row(std::size_t t) const noexcept {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), t,
                             [](const Row& r, std::size_t key) { return r.t < key; });
  return it != rows_.end() && it->t == t;
}

const ValueTable::Row& ValueTable::row(std::size_t t) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), t,
                             [](const Row& r, std::size_t key) { return r.t < key; });
  if (it == rows_.end() || it->t != t) {
    throw DomainError("row t = " + std::to_string(t) + " was not retained");
  }
  return *it;
}

double ValueTable::value(std::size_t t, std::size_t j) const {
  const Row& r = row(t);
  if (j > k_max_ || j < r.j_lo) {
    throw DomainError("state (" + std::to_string(t) + ", " + std::to_string(j) +
                      ") is outside the computed band");
  }
  return r.values[j];
}

double ValueTable::threshold(std::size_t t, std::size_t j) const {
  const Row& r = row(t);
  if (j > k_max_ || j < r.j_lo) {
    throw DomainError("state (" + std::to_string(t) + ", " + std::to_string(j) +
                      ") is outside the computed band");
  }
  return r.thresholds[j];
}

void ValueTable::write_csv(std::ostream& out) const {
  std::string buf = "t,j,value,threshold\n";
  for (const Row& r : rows_) {
    for (std::size_t j = r.j_lo; j <= k_max_; ++j) {
      buf += std::to_string(r.t);
      buf += ',';
      buf += std::to_string(j);
      buf += ',';
      append_number(buf, r.values[j]);
      buf += ',';
      if (!std::isnan(r.thresholds[j])) append_number(buf, r.thresholds[j]);
      buf += '\n';
    }
    out << buf;
    buf.clear();
  }
}

ValueTable dp_table(const DistributionModel& d, std::size_t n, std::size_t k,
                    const TableOptions& options) {
  require_budget(n, k, "dp_table");
  const double x_star = d.right_endpoint();
  const double x_min = d.left_endpoint();
  const double mean = d.mean();
  return run_recursion(Policy::DP, d, n, k, options,
                       [&](std::size_t t, std::size_t j, double below, double same, double& thr) {
                         if (j >= t) {
                           thr = x_min;
                           return static_cast<double>(t) * mean;
                         }
                         const double tau = std::min(same - below, x_star);
                         thr = tau;
                         return same + d.tail_integral(tau);
                       });
}

ValueTable ce_table(const DistributionModel& d, std::size_t n, std::size_t k,
                    const TableOptions& options) {
  require_budget(n, k, "ce_table");
  const double mean = d.mean();
  const double x_min = d.left_endpoint();
  return run_recursion(Policy::CE, d, n, k, options,
                       [&](std::size_t t, std::size_t j, double below, double same, double& thr) {
                         if (j >= t) {
                           thr = x_min;
                           return static_cast<double>(t) * mean;
                         }
                         const double p = static_cast<double>(j) / static_cast<double>(t);
                         const double q = d.upper_quantile(p);
                         thr = q;
                         return p * (below + q) + d.tail_integral(q) + (1.0 - p) * same;
                       });
}

ValueTable value_table(Policy policy, const DistributionModel& d, std::size_t n, std::size_t k,
                       const TableOptions& options) {
  return policy == Policy::DP ? dp_table(d, n, k, options) : ce_table(d, n, k, options);
}

double fixed_threshold_value(const DistributionModel& d, std::size_t n, std::size_t k, double T) {
  require_budget(n, k, "fixed_threshold_value");
  if (!std::isfinite(T) || T < 0.0 || T > d.right_endpoint()) {
    throw DomainError("fixed_threshold_value: T must lie in [0, x*]");
  }
  const double p = d.tail(T);
  const double gain = T * p + d.tail_integral(T);  // E[X; X >= T]
  std::vector<double> w(k + 1, 0.0);
  for (std::size_t t = 1; t <= n; ++t) {
    const std::size_t hi = std::min(k, t);
    if (t <= k) w[t] = w[t - 1];
    for (std::size_t j = hi; j >= 1; --j) {
      w[j] = gain + p * w[j - 1] + (1.0 - p) * w[j];
    }
  }
  return w[k];
}

double order_statistic_mean(const DistributionModel& d, std::size_t n, std::size_t r,
                            double* error_estimate) {
  if (r < 1 || r > n) throw DomainError("order_statistic_mean: requires 1 <= r <= n");
  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  // The upper-tail probability V of the r-th largest is Beta(r, n - r + 1);
  // integrate over z = n V.
  const double log_c = numerics::log_gamma_ratio(nd + 1.0, nd - rd + 1.0) -
                       numerics::log_gamma(rd) - rd * std::log(nd);
  auto kernel = [&](double z) {
    if (!(z > 0.0) || !(z < nd)) return 0.0;
    const double log_k = (rd - 1.0) * std::log(z) + (nd - rd) * std::log1p(-z / nd) + log_c;
    return d.upper_quantile(z / nd) * std::exp(log_k);
  };

  // z = s^m flattens the z^{-gamma} singularity of the quantile at the origin.
  const double gamma = d.gamma();
  const double m = gamma > 0.0 ? 1.0 / (1.0 - gamma) : (gamma == 0.0 ? 2.0 : 1.0);
  auto mapped = [&](double s) {
    const double z = std::pow(s, m);
    return kernel(z) * m * std::pow(s, m - 1.0);
  };

  const double split = std::min(nd, rd + 10.0 * std::sqrt(rd) + 50.0);
  const auto head = numerics::integrate_adaptive(mapped, 0.0, std::pow(split, 1.0 / m), 1e-8);
  double value = head.value;
  double error = head.abs_error_estimate;
  if (split < nd) {
    numerics::QuadratureOptions tail_opts;
    tail_opts.abs_tol = 1e-12 * std::abs(head.value);
    const auto rest = numerics::integrate_adaptive(kernel, split, nd, 1e-8, tail_opts);
    value += rest.value;
    error += rest.abs_error_estimate;
  }
  if (error_estimate != nullptr) *error_estimate = error;
  return value;
}

ProphetValue prophet_value(const DistributionModel& d, std::size_t n, std::size_t k) {
  require_budget(n, k, "prophet_value");
  ProphetValue out;
  out.n = n;
  out.k = k;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (k == n) {
    out.value = nd * d.mean();
    return out;
  }
  if (d.family() == Family::Pareto) {
    const double g = d.gamma();
    out.value = numerics::gamma_ratio(nd + 1.0, nd + 1.0 - g) *
                numerics::gamma_ratio(kd + 1.0 - g, kd) / (1.0 - g);
    return out;
  }
  out.method = ProphetValue::Method::Quadrature;
  for (std::size_t r = 1; r <= k; ++r) {
    double err = 0.0;
    out.value += order_statistic_mean(d, n, r, &err);
    out.error_estimate += err;
  }
  return out;
}

double prophet_asymptotic(const DistributionModel& d, std::size_t n, std::size_t k) {
  if (k < 1) throw DomainError("prophet_asymptotic: k must be >= 1");
  const EvtScales s = d.evt_scales(n);
  const double g = d.gamma();
  const double kd = static_cast<double>(k);
  if (g > 0.0) return numerics::gamma_ratio(kd + 1.0 - g, kd) / (1.0 - g) * s.u_n;
  if (g == 0.0) {
    double psi_sum = 0.0;
    for (std::size_t r = 1; r <= k; ++r) psi_sum -= numerics::digamma(static_cast<double>(r));
    return kd * s.u_n + s.a_n * psi_sum;
  }
  return kd * d.right_endpoint() - numerics::gamma_ratio(kd + 1.0 - g, kd) / (1.0 - g) * s.a_n;
}

}  // namespace prophet
