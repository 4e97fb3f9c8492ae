#pragma once

#include <cstddef>
#include <functional>
#include <limits>

#include "prophet/errors.hpp"

namespace prophet::numerics {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// ln Gamma(x) for finite x > 0. Lanczos (g = 7) in the bulk, Taylor series
/// around the zeros at 1 and 2, Stirling series for x >= 10.
double log_gamma(double x);

/// ln(Gamma(a) / Gamma(b)). When both arguments are large the Stirling terms
/// are differenced analytically so the result keeps full relative accuracy
/// even for arguments near 1e7.
double log_gamma_ratio(double a, double b);

/// Gamma(a) / Gamma(b), evaluated in log space. Every gamma ratio in the
/// library goes through here.
double gamma_ratio(double a, double b);

/// ln B(a, b).
double log_beta(double a, double b);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// H_m = 1 + 1/2 + ... + 1/m (H_0 = 0).
double harmonic(std::size_t m);

// ---------------------------------------------------------------------------
// Scalar root solving
// ---------------------------------------------------------------------------

struct Bracket {
  double lo;
  double hi;
};

inline constexpr double kDefaultRootTolerance = 1e-13;

/// Root of a strictly increasing f with f(lo) <= 0 <= f(hi).
///
/// Bisection keeps the bracket safe; Illinois-style false-position steps
/// polish it. Returns x with |f(x)| <= tol and a final bracket narrower than
/// tol (or than one ulp when tol is below machine resolution at x).
/// Deterministic for a given f and bracket.
///
/// Throws BracketError when there is no sign change and ConvergenceError when
/// the iteration cap is hit.
double solve_increasing_root(const std::function<double(double)>& f, Bracket bracket,
                             double tol = kDefaultRootTolerance, int max_iterations = 400);

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 0.0;
  std::size_t max_evaluations = 60000;
  // Only used when b is +infinity. The integrand is assumed to decay at
  // least like u^{-decay_exponent}; the substitution
  // u = a + scale * (phi / (1 - phi))^m with m = max(1, 1 / (decay_exponent - 1))
  // keeps the mapped integrand bounded near s = 1. Pass +infinity for
  // exponential decay.
  double decay_exponent = std::numeric_limits<double>::infinity();
  double tail_scale = 1.0;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on (a, b); b may be
/// +infinity. Endpoints are never evaluated, so integrable endpoint
/// singularities are allowed. The rule runs on s in (0, 1) after the cubic
/// map phi(s) = s^2 (3 - 2s), which flattens inverse-square-root endpoint
/// behaviour; the decay substitution below is composed with it.
///
/// Stops once the summed |Kronrod - Gauss| estimate falls below
/// max(rel_tol * |value|, abs_tol). Exceeding the evaluation budget throws
/// ConvergenceError carrying the best estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, const QuadratureOptions& options = {});

}  // namespace prophet::numerics
