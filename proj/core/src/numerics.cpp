#include "prophet/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace prophet::numerics {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

// zeta(2) .. zeta(30)
constexpr std::array<double, 29> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
    1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
    1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
    1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248,
    1.0000000018626597235, 1.0000000009313274324,
};

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// ln Gamma(1 + z) for |z| < 0.25.
double log_gamma_1p_series(double z) {
  double sum = 0.0;
  double zk = -z;
  for (std::size_t k = 2; k < kZeta.size() + 2; ++k) {
    zk *= -z;  // (-z)^k
    sum += kZeta[k - 2] * zk / static_cast<double>(k);
  }
  return -kEulerGamma * z + sum;
}

// Stirling correction sum_{i} B_{2i} / (2i (2i-1) x^{2i-1}).
double stirling_tail(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 +
                                      r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

double log_gamma_lanczos(double x) {
  // Gamma(x) = Gamma(y + 1) with y = x - 1.
  const double y = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (y + static_cast<double>(i));
  const double t = y + kLanczosG + 0.5;
  return kHalfLog2Pi + (y + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= 10.0) return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_tail(x);
  if (std::abs(x - 1.0) < 0.25) return log_gamma_1p_series(x - 1.0);
  if (std::abs(x - 2.0) < 0.25) return std::log1p(x - 2.0) + log_gamma_1p_series(x - 2.0);
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  return log_gamma_lanczos(x);
}

double log_gamma_ratio(double a, double b) {
  require_positive(a, "log_gamma_ratio");
  require_positive(b, "log_gamma_ratio");
  if (a >= 10.0 && b >= 10.0) {
    const double d = a - b;
    return (b - 0.5) * std::log1p(d / b) + d * std::log(a) - d + stirling_tail(a) -
           stirling_tail(b);
  }
  return log_gamma(a) - log_gamma(b);
}

double gamma_ratio(double a, double b) { return std::exp(log_gamma_ratio(a, b)); }

double log_beta(double a, double b) {
  require_positive(a, "log_beta");
  require_positive(b, "log_beta");
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  // ln B = ln Gamma(lo) - ln(Gamma(hi + lo) / Gamma(hi)); the ratio path
  // keeps precision when hi is large.
  return log_gamma(lo) - log_gamma_ratio(hi + lo, hi);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double series =
      r2 * (1.0 / 12.0 -
            r2 * (1.0 / 120.0 -
                  r2 * (1.0 / 252.0 -
                        r2 * (1.0 / 240.0 -
                              r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 * (1.0 / 12.0)))))));
  return shift + std::log(x) - 0.5 * r - series;
}

double harmonic(std::size_t m) {
  double h = 0.0;
  // Summed smallest-first.
  for (std::size_t j = m; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

double solve_increasing_root(const std::function<double(double)>& f, Bracket bracket, double tol,
                             int max_iterations) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw DomainError("solve_increasing_root: bracket requires lo < hi");
  if (!(tol > 0.0)) throw DomainError("solve_increasing_root: tolerance must be > 0");

  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw BracketError("solve_increasing_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  // Scaled copies for the Illinois update; flo/fhi keep true values.
  double slo = flo;
  double shi = fhi;
  int last_side = 0;
  double width_two_steps_ago = hi - lo;
  double width_one_step_ago = hi - lo;
  bool force_bisect = false;

  auto done = [&]() {
    const bool narrow = (hi - lo) <= tol || std::nextafter(lo, hi) >= hi;
    return narrow && std::min(std::abs(flo), std::abs(fhi)) <= tol;
  };
  auto best = [&]() { return std::abs(flo) <= std::abs(fhi) ? lo : hi; };

  for (int it = 0; it < max_iterations; ++it) {
    if (done()) return best();
    if (std::nextafter(lo, hi) >= hi) return best();  // machine resolution reached

    double x = lo + 0.5 * (hi - lo);
    if (!force_bisect && std::isfinite(slo) && std::isfinite(shi)) {
      const double candidate = lo - slo * (hi - lo) / (shi - slo);
      if (candidate > lo && candidate < hi) x = candidate;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::isnan(fx)) throw DomainError("solve_increasing_root: function returned NaN");

    if (fx < 0.0) {
      lo = x;
      flo = slo = fx;
      if (last_side == -1) shi *= 0.5;
      last_side = -1;
    } else {
      hi = x;
      fhi = shi = fx;
      if (last_side == 1) slo *= 0.5;
      last_side = 1;
    }

    const double width = hi - lo;
    force_bisect = width > 0.5 * width_two_steps_ago;
    width_two_steps_ago = width_one_step_ago;
    width_one_step_ago = width;
  }
  if (done()) return best();
  throw ConvergenceError("solve_increasing_root: iteration cap reached", best(), hi - lo);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class G>
Segment gauss_kronrod(const G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    // Keep nodes strictly inside (a, b) so endpoint singularities are never hit.
    const double left = std::max(center - dx, std::nextafter(a, b));
    const double right = std::min(center + dx, std::nextafter(b, a));
    const double pair = g(left) + g(right);
    kronrod += kWgk[i] * pair;
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, const QuadratureOptions& options) {
  if (!std::isfinite(a)) throw DomainError("integrate_adaptive: lower limit must be finite");
  if (std::isnan(b) || b == -std::numeric_limits<double>::infinity() || !(b > a)) {
    throw DomainError("integrate_adaptive: requires a < b (b may be +inf)");
  }
  if (!(rel_tol > 0.0) && !(options.abs_tol > 0.0)) {
    throw DomainError("integrate_adaptive: need a positive tolerance");
  }

  // Everything is integrated over s in (0, 1). The cubic map
  // phi(s) = s^2 (3 - 2s) has a vanishing derivative at both ends, which
  // turns algebraic endpoint singularities into bounded integrands.
  std::size_t evaluations = 0;
  std::function<double(double)> g;
  const double lo = 0.0;
  const double hi = 1.0;
  auto phi = [](double s) { return s * s * (3.0 - 2.0 * s); };
  auto one_minus_phi = [](double s) { return (1.0 - s) * (1.0 - s) * (1.0 + 2.0 * s); };
  auto dphi = [](double s) { return 6.0 * s * (1.0 - s); };
  if (std::isinf(b)) {
    const double p = options.decay_exponent;
    if (!(p > 1.0)) throw DomainError("integrate_adaptive: decay exponent must exceed 1");
    const double m = (std::isinf(p) || p >= 2.0) ? 1.0 : 1.0 / (p - 1.0);
    const double scale = options.tail_scale;
    g = [&, a, m, scale](double s) {
      ++evaluations;
      const double q = one_minus_phi(s);
      const double ratio = phi(s) / q;
      const double u = a + scale * std::pow(ratio, m);
      if (!std::isfinite(u) || q == 0.0) return 0.0;
      const double jac = scale * m * std::pow(ratio, m - 1.0) / (q * q) * dphi(s);
      const double value = f(u) * jac;
      return std::isfinite(value) ? value : 0.0;
    };
  } else {
    const double width = b - a;
    g = [&, a, b, width](double s) {
      ++evaluations;
      double x = s < 0.5 ? a + width * phi(s) : b - width * one_minus_phi(s);
      x = std::min(std::max(x, std::nextafter(a, b)), std::nextafter(b, a));
      return f(x) * width * dphi(s);
    };
  }

  std::priority_queue<Segment> open;
  std::vector<Segment> closed;
  const Segment first = gauss_kronrod(g, lo, hi);
  open.push(first);
  double total = first.value;
  double total_error = first.error;

  auto target = [&]() { return std::max(rel_tol * std::abs(total), options.abs_tol); };

  while (!open.empty() && total_error > target()) {
    if (!std::isfinite(total) || !std::isfinite(total_error)) {
      throw ConvergenceError("integrate_adaptive: non-finite integrand", total, total_error);
    }
    if (evaluations + 30 > options.max_evaluations) {
      throw ConvergenceError("integrate_adaptive: evaluation budget exhausted", total, total_error);
    }
    const Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 8.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Cannot be refined further; stop counting it against the target.
      closed.push_back(worst);
      total_error -= worst.error;
      continue;
    }
    const Segment left = gauss_kronrod(g, worst.a, mid);
    const Segment right = gauss_kronrod(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }

  // Re-sum from the pieces to drop the drift of the running updates.
  double value = 0.0;
  double error = 0.0;
  for (const auto& s : closed) {
    value += s.value;
    error += s.error;
  }
  while (!open.empty()) {
    value += open.top().value;
    error += open.top().error;
    open.pop();
  }
  if (!std::isfinite(value)) {
    throw ConvergenceError("integrate_adaptive: non-finite integrand", value, error);
  }
  return {value, error, evaluations};
}

}  // namespace prophet::numerics
