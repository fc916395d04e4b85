#include <doctest.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "relaynet/stats.hpp"

using namespace relaynet;
using boost::math::quadrature::gauss_kronrod;

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// Integrals over t = ln x of the log-normal density, optionally weighted by x.
double quad_mass(const LogNormal& d, double cap) {
  auto f = [&](double t) { return normal_pdf((t - d.mu) / d.sigma) / d.sigma; };
  return gauss_kronrod<double, 61>::integrate(f, -std::numeric_limits<double>::infinity(), std::log(cap), 15, 1e-14);
}

double quad_first_moment(const LogNormal& d, double cap) {
  auto f = [&](double t) { return std::exp(t) * normal_pdf((t - d.mu) / d.sigma) / d.sigma; };
  return gauss_kronrod<double, 61>::integrate(f, -std::numeric_limits<double>::infinity(), std::log(cap), 15, 1e-14);
}

}  // namespace

TEST_CASE("cdf") {
  LogNormal d(0.7, 0.4);
  CHECK(cdf(std::exp(0.7), d) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cdf(std::numeric_limits<double>::infinity(), d) == 1.0);
  CHECK(cdf(1e300, d) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cdf(0.0, d), std::domain_error);
  CHECK_THROWS_AS(cdf(-1.0, d), std::domain_error);

  LogNormal unit(0.0, 1.0);
  double q = quad_mass(unit, std::numbers::e);
  CHECK(q == doctest::Approx(0.841344746).epsilon(1e-8));
  CHECK(cdf(std::numbers::e, unit) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("cdf is monotone and bounded") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(-5.0, 5.0), sg(0.01, 3.0), lx(-12.0, 12.0);
  for (int k = 0; k < 200; ++k) {
    LogNormal d(mu(rng), sg(rng));
    std::vector<double> xs(20);
    for (auto& x : xs) x = std::exp(lx(rng));
    std::sort(xs.begin(), xs.end());
    double prev = 0.0;
    for (double x : xs) {
      double p = cdf(x, d);
      CHECK(p >= prev);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("truncated mean") {
  LogNormal unit(0.0, 1.0);
  double cap = std::numbers::e;
  double ref = quad_first_moment(unit, cap) / quad_mass(unit, cap);
  CHECK(truncated_mean(unit, cap) == doctest::Approx(ref).epsilon(1e-10));

  CHECK(truncated_mean(unit, std::numeric_limits<double>::infinity()) == doctest::Approx(std::exp(0.5)));
  CHECK(truncated_mean(unit, 1e12) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(truncated_mean(LogNormal(1.2, 0.0), 10.0) == doctest::Approx(std::exp(1.2)));
  CHECK(truncated_mean(LogNormal(1.2, 1e-9), 10.0) == doctest::Approx(std::exp(1.2)));

  CHECK_THROWS_AS(truncated_mean(LogNormal(0.0, 0.1), 1e-200), NegligibleMassError);
  CHECK_THROWS_AS(truncated_mean(LogNormal(3.0, 0.0), 1.0), NegligibleMassError);
}

TEST_CASE("truncated mean against quadrature over a parameter sweep") {
  for (double mu : {-4.0, -1.0, 0.0, 2.5}) {
    for (double sg : {0.2, 0.69, 1.38, 2.0}) {
      LogNormal d(mu, sg);
      for (double z : {-3.0, -1.0, 0.0, 1.5, 4.0}) {
        double cap = std::exp(mu + z * sg);
        double ref = quad_first_moment(d, cap) / quad_mass(d, cap);
        CHECK(std::abs(truncated_mean(d, cap) - ref) <= 1e-6 * ref);
        CHECK(partial_expectation(d, cap) == doctest::Approx(quad_first_moment(d, cap)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("truncated mean is monotone in the cap and below the mean") {
  LogNormal d(-2.0, 1.1);
  double prev = 0.0;
  for (double z = -6.0; z <= 6.0; z += 0.25) {
    double m = truncated_mean(d, std::exp(d.mu + z * d.sigma));
    CHECK(m >= prev);
    CHECK(m <= d.mean() * (1.0 + 1e-12));
    prev = m;
  }
}

TEST_CASE("fw_sum limits") {
  LogNormal a(0.4, 0.0);
  LogNormal s = fw_sum(a, a);
  CHECK(s.mu == doctest::Approx(std::log(2.0 * std::exp(0.4))));
  CHECK(s.sigma == 0.0);

  LogNormal x(0.3, 0.8);
  LogNormal tiny(-60.0, 0.5);
  LogNormal t = fw_sum(x, tiny);
  CHECK(t.mu == doctest::Approx(x.mu).epsilon(1e-12));
  CHECK(t.sigma == doctest::Approx(x.sigma).epsilon(1e-12));
  LogNormal u = fw_sum(x, LogNormal::constant(0.0));
  CHECK(u.mu == x.mu);
  CHECK(u.sigma == x.sigma);

  CHECK_THROWS_AS(fw_sum(x, x, 1.5), std::domain_error);
}

TEST_CASE("fw_sum moment identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mu(-3.0, 3.0), sg(0.0, 1.5), rho(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    LogNormal a(mu(rng), sg(rng)), b(mu(rng), sg(rng));
    double r = rho(rng);
    LogNormal s = fw_sum(a, b, r);
    double m = a.mean() + b.mean();
    // Covariance of jointly log-normal variables with log-correlation r.
    double cov = a.mean() * b.mean() * (std::exp(r * a.sigma * b.sigma) - 1.0);
    double v = a.variance() + b.variance() + 2.0 * cov;
    CHECK(std::abs(s.mean() - m) <= 1e-12 * m);
    CHECK(std::abs(s.variance() - v) <= 1e-12 * std::max(v, m * m));
  }
}

TEST_CASE("fw_sum against sampled moments") {
  LogNormal a(0.0, 0.5), b(0.3, 0.7);
  LogNormal s = fw_sum(a, b);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  const int n = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = std::exp(a.mu + a.sigma * z(rng)) + std::exp(b.mu + b.sigma * z(rng));
    sum += x;
    sum_sq += x * x;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(std::abs(s.mean() - mean) <= 0.005 * mean);
  CHECK(std::abs(s.variance() - var) <= 0.005 * var * 4.0);
  CHECK(std::abs(std::sqrt(s.variance()) - std::sqrt(var)) <= 0.005 * std::sqrt(var));
}

namespace {

double fw_ks(const LogNormal& a, const LogNormal& b, double rho, std::uint64_t seed) {
  LogNormal s = fw_sum(a, b, rho);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  const int n = 200000;
  std::vector<double> xs(n);
  for (auto& x : xs) {
    double z1 = z(rng);
    double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * z(rng);
    x = std::exp(a.mu + a.sigma * z1) + std::exp(b.mu + b.sigma * z2);
  }
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    double f = cdf(xs[static_cast<std::size_t>(i)], s);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
  }
  return ks;
}

}  // namespace

TEST_CASE("fw_sum Kolmogorov distance") {
  auto db = sigma_db_to_nat;
  CHECK(fw_ks(LogNormal(0.0, db(3.0)), LogNormal(-0.5, db(4.0)), 0.0, 1) <= 0.03);
  CHECK(fw_ks(LogNormal(0.0, db(3.0)), LogNormal(0.0, db(3.0)), 0.0, 2) <= 0.03);
  CHECK(fw_ks(LogNormal(0.0, db(4.0)), LogNormal(0.0, db(4.0)), 0.0, 3) <= 0.03);
  CHECK(fw_ks(LogNormal(0.0, db(6.0)), LogNormal(0.2, db(6.0)), 0.5, 4) <= 0.03);
  // Moment matching misplaces the body once the spread is large and uncorrelated.
  CHECK(fw_ks(LogNormal(0.0, db(6.0)), LogNormal(0.0, db(6.0)), 0.0, 5) > 0.03);
  CHECK(fw_ks(LogNormal(1.0, db(6.0)), LogNormal(0.0, db(2.0)), 0.0, 6) > 0.1);
}

TEST_CASE("prob_le") {
  CHECK(prob_le(LogNormal(0.0, 0.3), LogNormal(0.0, 0.4)) == doctest::Approx(0.5));
  CHECK(prob_le(LogNormal(0.0, 0.0), LogNormal(0.1, 0.0)) == 1.0);
  CHECK(prob_le(LogNormal(0.2, 0.0), LogNormal(0.1, 0.0)) == 0.0);
  CHECK(prob_le(LogNormal::constant(0.0), LogNormal(0.0, 1.0)) == 1.0);
  double p = prob_le(LogNormal(0.0, 0.3), LogNormal(0.5, 0.4));
  CHECK(p == doctest::Approx(std_normal_cdf(0.5 / 0.5)));
}

TEST_CASE("sigma conversion and log cdf tail") {
  CHECK(sigma_db_to_nat(10.0) == doctest::Approx(std::numbers::ln10));
  for (double z : {-5.0, -15.0, -19.9}) {
    CHECK(log_std_normal_cdf(z) == doctest::Approx(std::log(std_normal_cdf(z))).epsilon(1e-12));
  }
  CHECK(log_std_normal_cdf(-20.1) == doctest::Approx(std::log(std_normal_cdf(-20.1))).epsilon(1e-6));
  CHECK(std::isfinite(log_std_normal_cdf(-60.0)));
}
