#pragma once

#include <limits>
#include <stdexcept>

namespace relaynet {

class NegligibleMassError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// X = exp(mu + sigma Z). mu = -inf encodes the constant zero.
struct LogNormal {
  double mu = 0.0;
  double sigma = 0.0;

  LogNormal() = default;
  LogNormal(double mu_, double sigma_);

  static LogNormal constant(double value);
  static LogNormal from_median(double median, double sigma);

  bool is_zero() const { return mu == -std::numeric_limits<double>::infinity(); }
  double median() const;
  double mean() const;
  double variance() const;

  LogNormal scaled(double factor) const;
  // exp(sigma^2) * X, the size-biased companion used inside partial expectations.
  LogNormal tilted() const;
};

double sigma_db_to_nat(double sigma_db);

double std_normal_cdf(double z);
double log_std_normal_cdf(double z);

double cdf(double x, const LogNormal& d);
// P(lo <= X <= hi), zero when hi < lo.
double interval_prob(double lo, double hi, const LogNormal& d);
// E[X 1{X <= cap}]
double partial_expectation(const LogNormal& d, double cap);
// E[X | X <= cap]
double truncated_mean(const LogNormal& d, double cap);

// Moment-matched log-normal for a + b where corr(ln a, ln b) = rho.
LogNormal fw_sum(const LogNormal& a, const LogNormal& b, double rho = 0.0);

// P(X <= Y) for independent X, Y.
double prob_le(const LogNormal& x, const LogNormal& y);

}  // namespace relaynet
