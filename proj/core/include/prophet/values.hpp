#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "prophet/distributions.hpp"

namespace prophet {

enum class Policy { DP, CE };

std::string to_string(Policy policy);

// Which rows t of the (t, j) grid a table keeps. The recursion itself only
// ever holds one row.
struct TableOptions {
  enum class Retain { FinalOnly, Rows, Full };
  Retain retain = Retain::FinalOnly;
  std::vector<std::size_t> rows;  // used with Retain::Rows; row n is always kept

  static TableOptions final_only() { return {}; }
  static TableOptions full() { return {Retain::Full, {}}; }
  static TableOptions with_rows(std::vector<std::size_t> rows) {
    return {Retain::Rows, std::move(rows)};
  }
};

// V(t, j): expected reward with t arrivals left and j units left, for the
// optimal dynamic program or the certainty-equivalent rule, plus the
// acceptance threshold used at (t, j).
class ValueTable {
 public:
  struct Row {
    std::size_t t = 0;
    // Smallest j stored exactly. In final-only mode the recursion skips
    // states that cannot reach (n, k); entries below this index are unset.
    std::size_t j_lo = 0;
    std::vector<double> values;      // size k_max + 1
    std::vector<double> thresholds;  // NaN where undefined (t = 0 or j = 0)
  };

  ValueTable(Policy policy, DistributionModel distribution, std::size_t n_max, std::size_t k_max,
             std::vector<Row> rows);

  [[nodiscard]] Policy policy() const noexcept { return policy_; }
  [[nodiscard]] const DistributionModel& distribution() const noexcept { return distribution_; }
  [[nodiscard]] std::size_t n_max() const noexcept { return n_max_; }
  [[nodiscard]] std::size_t k_max() const noexcept { return k_max_; }

  [[nodiscard]] bool has_row(std::size_t t) const noexcept;
  [[nodiscard]] const Row& row(std::size_t t) const;
  [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }

  // Throws DomainError when row t was not retained or j is outside the
  // computed band.
  [[nodiscard]] double value(std::size_t t, std::size_t j) const;
  [[nodiscard]] double threshold(std::size_t t, std::size_t j) const;
  [[nodiscard]] double final_value() const { return value(n_max_, k_max_); }

  // Columns t,j,value,threshold; an undefined threshold is left empty.
  void write_csv(std::ostream& out) const;

 private:
  Policy policy_;
  DistributionModel distribution_;
  std::size_t n_max_;
  std::size_t k_max_;
  std::vector<Row> rows_;  // sorted by t
};

// V(t,j) = V(t-1,j) + I(tau), tau = V(t-1,j) - V(t-1,j-1).
ValueTable dp_table(const DistributionModel& d, std::size_t n, std::size_t k,
                    const TableOptions& options = {});

// V(t,j) = (j/t) V(t-1,j-1) + I(q) + q j/t + (1 - j/t) V(t-1,j), q = F^{<=}(1 - j/t);
// V(t,j) = t E[X] once j >= t.
ValueTable ce_table(const DistributionModel& d, std::size_t n, std::size_t k,
                    const TableOptions& options = {});

ValueTable value_table(Policy policy, const DistributionModel& d, std::size_t n, std::size_t k,
                       const TableOptions& options = {});

// Expected reward of accepting the first k arrivals that reach T.
double fixed_threshold_value(const DistributionModel& d, std::size_t n, std::size_t k, double T);

struct ProphetValue {
  enum class Method { ClosedForm, Quadrature, MonteCarlo };
  std::size_t n = 0;
  std::size_t k = 0;
  double value = 0.0;
  Method method = Method::ClosedForm;
  double error_estimate = 0.0;
};

std::string to_string(ProphetValue::Method method);

// E[sum of the k largest of n draws]. Pareto uses the gamma-ratio closed form;
// other families integrate each order statistic against its Beta kernel.
ProphetValue prophet_value(const DistributionModel& d, std::size_t n, std::size_t k);

// E[r-th largest of n draws], r = 1 is the maximum.
double order_statistic_mean(const DistributionModel& d, std::size_t n, std::size_t r,
                            double* error_estimate = nullptr);

// Leading-order approximation of the prophet value in the regime set by gamma.
double prophet_asymptotic(const DistributionModel& d, std::size_t n, std::size_t k);

}  // namespace prophet
