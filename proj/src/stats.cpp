#include "relaynet/stats.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace relaynet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_valid(const LogNormal& d) {
  if (!(d.sigma >= 0.0) || !std::isfinite(d.sigma) || std::isnan(d.mu) || d.mu == std::numeric_limits<double>::infinity()) {
    throw std::domain_error("invalid log-normal parameters");
  }
}

// Standardized log argument, with sigma = 0 mapped to +-inf (<= inclusive).
double standardize(double log_x, const LogNormal& d) {
  if (d.is_zero()) return std::numeric_limits<double>::infinity();
  if (d.sigma == 0.0) {
    return log_x >= d.mu ? std::numeric_limits<double>::infinity() : kNegInf;
  }
  return (log_x - d.mu) / d.sigma;
}

}  // namespace

LogNormal::LogNormal(double mu_, double sigma_) : mu(mu_), sigma(sigma_) { require_valid(*this); }

LogNormal LogNormal::constant(double value) {
  if (value < 0.0 || !std::isfinite(value)) throw std::domain_error("constant must be finite and nonnegative");
  return LogNormal(value == 0.0 ? kNegInf : std::log(value), 0.0);
}

LogNormal LogNormal::from_median(double median, double sigma) {
  if (median < 0.0 || !std::isfinite(median)) throw std::domain_error("median must be finite and nonnegative");
  return LogNormal(median == 0.0 ? kNegInf : std::log(median), sigma);
}

double LogNormal::median() const { return std::exp(mu); }

double LogNormal::mean() const { return std::exp(mu + 0.5 * sigma * sigma); }

double LogNormal::variance() const {
  double s2 = sigma * sigma;
  return std::expm1(s2) * std::exp(2.0 * mu + s2);
}

LogNormal LogNormal::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::domain_error("scale factor must be positive");
  return LogNormal(mu + std::log(factor), sigma);
}

LogNormal LogNormal::tilted() const { return LogNormal(mu + sigma * sigma, sigma); }

double sigma_db_to_nat(double sigma_db) { return sigma_db * std::numbers::ln10 / 10.0; }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_std_normal_cdf(double z) {
  if (z > -20.0) return std::log(std_normal_cdf(z));
  if (z == kNegInf) return kNegInf;
  // Mills-ratio series: Phi(z) ~ phi(z)/|z| (1 - 1/z^2 + 3/z^4 - 15/z^6)
  double z2 = z * z;
  double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double cdf(double x, const LogNormal& d) {
  if (!(x > 0.0)) throw std::domain_error("cdf argument must be positive, got " + std::to_string(x));
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  return std_normal_cdf(standardize(std::log(x), d));
}

double interval_prob(double lo, double hi, const LogNormal& d) {
  if (hi < lo) return 0.0;
  double p = cdf(hi, d) - cdf(lo, d);
  return p > 0.0 ? p : 0.0;
}

double partial_expectation(const LogNormal& d, double cap) {
  if (!(cap > 0.0)) throw std::domain_error("cap must be positive");
  if (d.is_zero()) return 0.0;
  if (cap == std::numeric_limits<double>::infinity()) return d.mean();
  if (d.sigma == 0.0) return std::log(cap) >= d.mu ? d.mean() : 0.0;
  double z = (std::log(cap) - d.mu) / d.sigma;
  return std::exp(d.mu + 0.5 * d.sigma * d.sigma + log_std_normal_cdf(z - d.sigma));
}

double truncated_mean(const LogNormal& d, double cap) {
  if (!(cap > 0.0)) throw std::domain_error("cap must be positive");
  if (d.is_zero()) return 0.0;
  if (cap == std::numeric_limits<double>::infinity()) return d.mean();
  if (d.sigma == 0.0) {
    if (std::log(cap) >= d.mu) return d.mean();
    throw NegligibleMassError("no probability mass below the cap");
  }
  double z = (std::log(cap) - d.mu) / d.sigma;
  double log_mass = log_std_normal_cdf(z);
  if (log_mass < std::log(DBL_MIN)) {
    throw NegligibleMassError("probability mass below the cap underflows");
  }
  return std::exp(d.mu + 0.5 * d.sigma * d.sigma + log_std_normal_cdf(z - d.sigma) - log_mass);
}

LogNormal fw_sum(const LogNormal& a, const LogNormal& b, double rho) {
  require_valid(a);
  require_valid(b);
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::domain_error("correlation must lie in [-1, 1]");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double ma = a.mean();
  double mb = b.mean();
  double m = ma + mb;
  double cov = ma * mb * std::expm1(rho * a.sigma * b.sigma);
  double v = a.variance() + b.variance() + 2.0 * cov;
  double s2 = std::log1p(v / (m * m));
  if (s2 < 0.0) s2 = 0.0;
  return LogNormal(std::log(m) - 0.5 * s2, std::sqrt(s2));
}

double prob_le(const LogNormal& x, const LogNormal& y) {
  if (x.is_zero()) return 1.0;
  if (y.is_zero()) return 0.0;
  double s = std::hypot(x.sigma, y.sigma);
  if (s == 0.0) return x.mu <= y.mu ? 1.0 : 0.0;
  return std_normal_cdf((y.mu - x.mu) / s);
}

}  // namespace relaynet
