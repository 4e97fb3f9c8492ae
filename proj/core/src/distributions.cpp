#include "prophet/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "prophet/numerics.hpp"

namespace prophet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void require_heavy_index(double gamma, const char* family) {
  if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= 1.0) {
    throw DomainError(std::string(family) + " requires gamma in (0, 1), got " +
                      std::to_string(gamma));
  }
}

// Gamma(a, x) for x > a + 1 by the modified Lentz continued fraction.
double upper_incomplete_gamma(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double step = d * c;
    h *= step;
    if (std::abs(step - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

// int_t^inf (1 - exp(-u^{-1/g})) du for t > 0. With x = t^{-1/g} this is
// lower_gamma(1 - g, x) - t (1 - e^{-x}).
double frechet_tail_integral(double gamma, double t) {
  const double x = std::pow(t, -1.0 / gamma);
  if (x <= 2.0) {
    // g * sum_{m>=1} (-1)^{m+1} x^{m-g} / (m! (m-g))
    double sum = 0.0;
    double term = 1.0;  // x^m / m!
    for (int m = 1; m < 60; ++m) {
      term *= x / m;
      const double contrib = term / (m - gamma);
      sum += (m % 2 == 1) ? contrib : -contrib;
      if (contrib < 1e-18 * std::abs(sum)) break;
    }
    return gamma * std::pow(x, -gamma) * sum;
  }
  const double a = 1.0 - gamma;
  const double full = std::exp(numerics::log_gamma(a));
  return full - upper_incomplete_gamma(a, x) - t * (-std::expm1(-x));
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::Pareto: return "pareto";
    case Family::Frechet: return "frechet";
    case Family::BoundedPower: return "bounded_power";
    case Family::Exponential: return "exponential";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "pareto") return Family::Pareto;
  if (name == "frechet") return Family::Frechet;
  if (name == "bounded_power" || name == "uniform") return Family::BoundedPower;
  if (name == "exponential") return Family::Exponential;
  throw ConfigurationError("unknown distribution family '" + name + "'");
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
    : seed_(seed), stream_index_(stream_index), key_(mix64(seed ^ mix64(stream_index + kGolden))) {}

std::uint64_t SeededStream::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double SeededStream::next_uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

DistributionModel::DistributionModel(Family family, double gamma, double scale)
    : family_(family), gamma_(gamma), scale_(scale), exponent_(0.0), mean_(0.0) {
  switch (family_) {
    case Family::Pareto:
      exponent_ = 1.0 / gamma_;
      mean_ = 1.0 / (1.0 - gamma_);
      break;
    case Family::Frechet:
      exponent_ = 1.0 / gamma_;
      mean_ = std::exp(numerics::log_gamma(1.0 - gamma_));
      break;
    case Family::BoundedPower:
      exponent_ = -1.0 / gamma_;
      mean_ = scale_ / (exponent_ + 1.0);
      break;
    case Family::Exponential:
      mean_ = 1.0;
      break;
  }
}

DistributionModel DistributionModel::pareto(double gamma) {
  require_heavy_index(gamma, "pareto");
  return {Family::Pareto, gamma, 1.0};
}

DistributionModel DistributionModel::frechet(double gamma) {
  require_heavy_index(gamma, "frechet");
  return {Family::Frechet, gamma, 1.0};
}

DistributionModel DistributionModel::bounded_power(double gamma, double endpoint) {
  if (!std::isfinite(gamma) || gamma >= 0.0) {
    throw DomainError("bounded_power requires gamma < 0, got " + std::to_string(gamma));
  }
  if (!std::isfinite(endpoint) || endpoint <= 0.0) {
    throw DomainError("bounded_power requires a finite endpoint > 0");
  }
  return {Family::BoundedPower, gamma, endpoint};
}

DistributionModel DistributionModel::exponential() { return {Family::Exponential, 0.0, 1.0}; }

double DistributionModel::left_endpoint() const noexcept {
  return family_ == Family::Pareto ? 1.0 : 0.0;
}

double DistributionModel::right_endpoint() const noexcept {
  return family_ == Family::BoundedPower ? scale_ : kInf;
}

std::string DistributionModel::describe() const {
  std::ostringstream out;
  out << to_string(family_);
  if (family_ != Family::Exponential) out << "(gamma=" << gamma_;
  if (family_ == Family::BoundedPower && scale_ != 1.0) out << ", endpoint=" << scale_;
  if (family_ != Family::Exponential) out << ")";
  return out.str();
}

double DistributionModel::tail(double x) const {
  if (std::isnan(x)) throw DomainError("tail: NaN argument");
  switch (family_) {
    case Family::Pareto:
      return x <= 1.0 ? 1.0 : std::pow(x, -exponent_);
    case Family::Frechet:
      return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -exponent_));
    case Family::BoundedPower:
      if (x <= 0.0) return 1.0;
      if (x >= scale_) return 0.0;
      return std::pow(1.0 - x / scale_, exponent_);
    case Family::Exponential:
      return x <= 0.0 ? 1.0 : std::exp(-x);
  }
  return 0.0;
}

double DistributionModel::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  switch (family_) {
    case Family::Frechet:
      return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -exponent_));
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x);
    default:
      return 1.0 - tail(x);
  }
}

double DistributionModel::upper_quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("upper_quantile: probability must lie in [0, 1], got " + std::to_string(q));
  }
  if (q == 0.0) return right_endpoint();
  if (q == 1.0) return left_endpoint();
  switch (family_) {
    case Family::Pareto:
      return std::pow(q, -gamma_);
    case Family::Frechet:
      return std::pow(-std::log1p(-q), -gamma_);
    case Family::BoundedPower:
      return scale_ * (1.0 - std::pow(q, -gamma_));
    case Family::Exponential:
      return -std::log(q);
  }
  return 0.0;
}

double DistributionModel::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("quantile: probability must lie in [0, 1], got " + std::to_string(p));
  }
  if (p == 0.0) return left_endpoint();
  if (p == 1.0) return right_endpoint();
  switch (family_) {
    case Family::Frechet:
      return std::pow(-std::log(p), -gamma_);
    case Family::Exponential:
      return -std::log1p(-p);
    default:
      return upper_quantile(1.0 - p);
  }
}

double DistributionModel::tail_integral(double t) const {
  if (std::isnan(t)) throw DomainError("tail_integral: NaN argument");
  if (t > right_endpoint()) {
    throw DomainError("tail_integral: t exceeds the right endpoint");
  }
  if (std::isinf(t)) return 0.0;
  const double lo = left_endpoint();
  if (t < lo) return (lo - t) + tail_integral(lo);
  switch (family_) {
    case Family::Pareto:
      return gamma_ / (1.0 - gamma_) * std::pow(t, 1.0 - exponent_);
    case Family::Frechet:
      return t == 0.0 ? mean_ : frechet_tail_integral(gamma_, t);
    case Family::BoundedPower:
      return scale_ * std::pow(1.0 - t / scale_, exponent_ + 1.0) / (exponent_ + 1.0);
    case Family::Exponential:
      return std::exp(-t);
  }
  return 0.0;
}

double DistributionModel::mean() const { return mean_; }

EvtScales DistributionModel::evt_scales(std::size_t n) const {
  if (n < 2) throw DomainError("evt_scales: n must be >= 2");
  const double nd = static_cast<double>(n);
  const double u = upper_quantile(1.0 / nd);
  if (gamma_ > 0.0) return {u, u};
  if (gamma_ < 0.0) {
    // x* - U(n) = c n^{g}; the closed form avoids cancellation.
    return {u, scale_ * std::pow(nd, gamma_)};
  }
  return {u, upper_quantile(1.0 / (std::exp(1.0) * nd)) - u};
}

std::vector<double> DistributionModel::sample(SeededStream& stream, std::size_t count) const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(upper_quantile(stream.next_uniform()));
  return out;
}

}  // namespace prophet
