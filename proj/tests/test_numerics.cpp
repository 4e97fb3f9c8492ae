#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "prophet/numerics.hpp"
#include "support.hpp"

namespace nm = prophet::numerics;
using prophet::testing::Gen;
using prophet::testing::rel_diff;

namespace {

constexpr double kPi = nm::kPi;

}  // namespace

TEST(LogGamma, Examples) {
  EXPECT_NEAR(nm::log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(nm::log_gamma(2.0), 0.0, 1e-15);
  EXPECT_NEAR(nm::log_gamma(5.0), std::log(24.0), 1e-13);
  EXPECT_NEAR(nm::log_gamma(0.5), 0.5 * std::log(kPi), 1e-13);
}

TEST(LogGamma, Factorials) {
  double factorial = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) factorial *= n;
    EXPECT_LE(rel_diff(std::exp(nm::log_gamma(n + 1.0)), factorial), 1e-10) << "n=" << n;
  }
}

TEST(LogGamma, HighPrecisionReference) {
  // 20-digit values from an arbitrary-precision evaluation.
  const std::vector<std::pair<double, double>> ref = {
      {0.001, 6.9071788853838536825},   {0.1, 2.2527126517342059599},
      {0.7, 0.26086724653166651439},    {0.95, 0.030968795237972897041},
      {1.2, -0.08537409000331584972},   {1.3, -0.10817480950786047095},
      {1.8, -0.071083872914372166988},  {2.2, 0.096947466790638776492},
      {2.3, 0.15418945495963058109},    {3.7, 1.4280723266653879219},
      {9.99, 12.77931521435019288},     {10.01, 12.824350262448247762},
      {123.456, 469.60554712992946873}, {100000.3, 1051291.1628502463853},
      {1e7, 151180949.36947391394},
  };
  for (const auto& [x, want] : ref) {
    EXPECT_LE(std::abs(nm::log_gamma(x) - want), 1e-12 * std::max(1.0, std::abs(want)))
        << "x=" << x;
  }
}

TEST(LogGamma, AgreesWithStdLgammaOnWideRange) {
  for (double x = 1e-3; x <= 1e7; x *= 1.37) {
    const double want = std::lgamma(x);
    EXPECT_LE(std::abs(nm::log_gamma(x) - want), 1e-12 * std::max(1.0, std::abs(want)))
        << "x=" << x;
  }
}

TEST(LogGamma, Recurrence) {
  for (int i = 1; i <= 1000; ++i) {
    const double x = 0.1 * i;
    EXPECT_NEAR(nm::log_gamma(x + 1.0) - nm::log_gamma(x), std::log(x), 1e-12) << "x=" << x;
  }
}

TEST(LogGamma, RejectsOutsideDomain) {
  EXPECT_THROW(nm::log_gamma(0.0), prophet::DomainError);
  EXPECT_THROW(nm::log_gamma(-1.5), prophet::DomainError);
  EXPECT_THROW(nm::log_gamma(std::nan("")), prophet::DomainError);
  EXPECT_THROW(nm::log_gamma(INFINITY), prophet::DomainError);
}

TEST(GammaRatio, Examples) {
  EXPECT_NEAR(nm::gamma_ratio(3.0, 2.0), 2.0, 1e-14);
  EXPECT_NEAR(nm::gamma_ratio(2.5, 1.5), 1.5, 1e-14);
  EXPECT_NEAR(nm::gamma_ratio(1.5, 2.5), 2.0 / 3.0, 1e-14);
  EXPECT_THROW(nm::gamma_ratio(-1.0, 2.0), prophet::DomainError);
}

TEST(GammaRatio, LargeArguments) {
  EXPECT_LE(rel_diff(nm::gamma_ratio(1e7 + 0.5, 1e7), 3162.277620639908826947), 1e-10);
  EXPECT_LE(rel_diff(nm::gamma_ratio(5000000.25, 4999999.5), 105737.1164312007201348), 1e-10);
}

TEST(GammaRatio, MatchesTgammaWhereRepresentable) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const double a = gen.uniform(0.01, 150.0);
    const double b = gen.uniform(0.01, 150.0);
    EXPECT_LE(rel_diff(nm::gamma_ratio(a, b), std::tgamma(a) / std::tgamma(b)), 1e-10)
        << a << " " << b;
  }
}

TEST(LogBeta, MatchesGammaDefinition) {
  EXPECT_NEAR(nm::log_beta(2.0, 0.5), std::log(4.0 / 3.0), 1e-13);
  EXPECT_NEAR(nm::log_beta(1.0, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(nm::log_beta(3.0, 4.0), std::log(1.0 / 60.0), 1e-13);
}

TEST(Digamma, Examples) {
  EXPECT_NEAR(nm::digamma(1.0), -0.5772156649, 1e-10);
  EXPECT_NEAR(nm::digamma(2.0), 1.0 - nm::kEulerGamma, 1e-10);
  EXPECT_NEAR(nm::digamma(10.0), 2.2517525891, 1e-10);
  EXPECT_NEAR(nm::digamma(0.05), -20.497844991299870371, 1e-10);
  EXPECT_NEAR(nm::digamma(0.5), -1.9635100260214234794, 1e-10);
  EXPECT_NEAR(nm::digamma(3.3), 1.0348224890596217491, 1e-10);
  EXPECT_NEAR(nm::digamma(12.5), 2.4851956512749120482, 1e-10);
  EXPECT_NEAR(nm::digamma(1000.5), 6.9077553206487964271, 1e-10);
  EXPECT_THROW(nm::digamma(0.0), prophet::DomainError);
}

TEST(Digamma, HarmonicIdentity) {
  for (std::size_t r = 1; r <= 200; ++r) {
    EXPECT_NEAR(nm::digamma(static_cast<double>(r)), nm::harmonic(r - 1) - nm::kEulerGamma, 1e-10)
        << "r=" << r;
  }
}

TEST(Digamma, Recurrence) {
  for (int i = 1; i <= 1000; ++i) {
    const double x = 0.1 * i;
    EXPECT_NEAR(nm::digamma(x + 1.0) - nm::digamma(x), 1.0 / x, 1e-10) << "x=" << x;
  }
}

TEST(Harmonic, SmallValues) {
  EXPECT_EQ(nm::harmonic(0), 0.0);
  EXPECT_EQ(nm::harmonic(1), 1.0);
  EXPECT_NEAR(nm::harmonic(4), 25.0 / 12.0, 1e-15);
}

TEST(SolveRoot, Examples) {
  const double golden = nm::solve_increasing_root([](double x) { return x * x + x - 1.0; },
                                                  {0.0, 1.0}, 1e-13);
  EXPECT_NEAR(golden, (std::sqrt(5.0) - 1.0) / 2.0, 1e-13);
  EXPECT_NEAR(nm::solve_increasing_root([](double x) { return x - 0.25; }, {0.0, 1.0}), 0.25,
              1e-13);
  EXPECT_NEAR(nm::solve_increasing_root([](double x) { return x * x * x - 8.0; }, {0.0, 3.0}), 2.0,
              1e-13);
}

TEST(SolveRoot, EndpointRoots) {
  EXPECT_EQ(nm::solve_increasing_root([](double x) { return x; }, {0.0, 1.0}), 0.0);
  EXPECT_EQ(nm::solve_increasing_root([](double x) { return x - 1.0; }, {0.0, 1.0}), 1.0);
}

TEST(SolveRoot, Errors) {
  EXPECT_THROW(nm::solve_increasing_root([](double x) { return x + 1.0; }, {0.0, 1.0}),
               prophet::BracketError);
  EXPECT_THROW(nm::solve_increasing_root([](double x) { return x; }, {1.0, 0.0}),
               prophet::DomainError);
  try {
    nm::solve_increasing_root([](double x) { return std::exp(x) - 2.0; }, {0.0, 10.0}, 1e-15, 2);
    FAIL() << "expected ConvergenceError";
  } catch (const prophet::ConvergenceError& e) {
    EXPECT_GT(e.best_estimate(), 0.0);
    EXPECT_LT(e.best_estimate(), 10.0);
  }
}

TEST(SolveRoot, RandomMonotonePolynomials) {
  Gen gen(2024);
  for (int i = 0; i < 1000; ++i) {
    const double c0 = gen.uniform(0.05, 3.0);
    const double c1 = gen.uniform(0.1, 2.0);
    const double c2 = gen.uniform(0.0, 2.0);
    const double c3 = gen.uniform(0.0, 2.0);
    const double c5 = gen.uniform(0.0, 0.5);
    auto f = [&](double x) {
      const double x2 = x * x;
      return c1 * x + c2 * x2 + c3 * x2 * x + c5 * x2 * x2 * x - c0;
    };
    const double hi = c0 / c1 + 1.0;
    const double tol = 1e-12;
    const double root = nm::solve_increasing_root(f, {0.0, hi}, tol);
    EXPECT_LE(std::abs(f(root)), tol) << "case " << i;
    EXPECT_GE(root, 0.0);
    EXPECT_LE(root, hi);
  }
}

TEST(Integrate, Examples) {
  const auto e = nm::integrate_adaptive([](double u) { return std::exp(-u); }, 0.0, INFINITY, 1e-10);
  EXPECT_NEAR(e.value, 1.0, 1e-10);
  EXPECT_GE(e.evaluations, 1u);
  EXPECT_GE(e.abs_error_estimate, 0.0);

  nm::QuadratureOptions poly;
  poly.decay_exponent = 2.0;
  const auto p = nm::integrate_adaptive([](double u) { return 1.0 / (u * u); }, 2.0, INFINITY,
                                        1e-10, poly);
  EXPECT_NEAR(p.value, 0.5, 1e-10);

  const auto b = nm::integrate_adaptive([](double u) { return 2.0 * u / std::sqrt(1.0 - u); }, 0.0,
                                        1.0, 1e-10);
  EXPECT_NEAR(b.value, 8.0 / 3.0, 1e-9);
}

struct KnownIntegral {
  std::string name;
  std::function<double(double)> f;
  double a;
  double b;
  double decay;
  double value;
};

TEST(Integrate, KnownIntegralsWithinReportedError) {
  const double inf = INFINITY;
  const std::vector<KnownIntegral> cases = {
      {"exp", [](double x) { return std::exp(-x); }, 0, inf, inf, 1.0},
      {"inv_square", [](double x) { return 1 / (x * x); }, 2, inf, 2, 0.5},
      {"beta", [](double x) { return 2 * x / std::sqrt(1 - x); }, 0, 1, inf, 8.0 / 3.0},
      {"sin", [](double x) { return std::sin(x); }, 0, kPi, inf, 2.0},
      {"square", [](double x) { return x * x; }, 0, 3, inf, 9.0},
      {"cauchy", [](double x) { return 1 / (1 + x * x); }, 0, inf, 2, kPi / 2},
      {"log", [](double x) { return std::log(x); }, 0, 1, inf, -1.0},
      {"inv_sqrt", [](double x) { return 1 / std::sqrt(x); }, 0, 1, inf, 2.0},
      {"gauss", [](double x) { return std::exp(-x * x); }, 0, inf, inf, std::sqrt(kPi) / 2},
      {"cos", [](double x) { return std::cos(x); }, 0, kPi / 2, inf, 1.0},
      {"reciprocal", [](double x) { return 1 / x; }, 1, std::exp(1.0), inf, 1.0},
      {"gamma2", [](double x) { return x * std::exp(-x); }, 0, inf, inf, 1.0},
      {"gamma4", [](double x) { return x * x * x * std::exp(-x); }, 0, inf, inf, 6.0},
      {"cube_decay", [](double x) { return std::pow(1 + x, -3.0); }, 0, inf, 3, 0.5},
      {"sqrt", [](double x) { return std::sqrt(x); }, 0, 4, inf, 16.0 / 3.0},
      {"exp_up", [](double x) { return std::exp(x); }, 0, 1, inf, std::exp(1.0) - 1},
      {"arcsin", [](double x) { return 1 / std::sqrt(1 - x * x); }, 0, 1, inf, kPi / 2},
      {"pow_1_5", [](double x) { return std::pow(x, -1.5); }, 1, inf, 1.5, 2.0},
      {"log1p", [](double x) { return std::log1p(x); }, 0, 1, inf, 2 * std::log(2.0) - 1},
      {"heavy", [](double x) { return std::pow(1 + x, -1.25); }, 0, inf, 1.25, 4.0},
  };
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    nm::QuadratureOptions opts;
    opts.decay_exponent = c.decay;
    const auto r = nm::integrate_adaptive(c.f, c.a, c.b, 1e-10, opts);
    const double err = std::abs(r.value - c.value);
    EXPECT_LE(err, r.abs_error_estimate + 8 * std::numeric_limits<double>::epsilon() *
                                              std::abs(c.value))
        << c.name << " value=" << r.value << " est=" << r.abs_error_estimate;
    EXPECT_LE(err, 1e-9 * std::abs(c.value)) << c.name;
  }
}

TEST(Integrate, BudgetExceededCarriesBestEstimate) {
  nm::QuadratureOptions opts;
  opts.max_evaluations = 200;
  try {
    nm::integrate_adaptive([](double x) { return std::sin(1.0 / x) / x; }, 1e-4, 1.0, 1e-12, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const prophet::ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Integrate, RejectsBadLimits) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(nm::integrate_adaptive(f, 1.0, 0.0, 1e-8), prophet::DomainError);
  EXPECT_THROW(nm::integrate_adaptive(f, -INFINITY, 0.0, 1e-8), prophet::DomainError);
}
