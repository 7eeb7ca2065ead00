#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fraccouple/correlation.hpp"
#include "fraccouple/errors.hpp"
#include "fraccouple/generators.hpp"
#include "fraccouple/kernel.hpp"
#include "mp_oracle.hpp"

using namespace fraccouple;

namespace {

// Direct double loop with the same normalization.
double naive_cross(const std::vector<double>& x, const std::vector<double>& y, std::size_t lag) {
  const double n = static_cast<double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    mx += x[t];
    my += y[t];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    sxx += (x[t] - mx) * (x[t] - mx);
    syy += (y[t] - my) * (y[t] - my);
  }
  for (std::size_t t = lag; t < x.size(); ++t) sxy += (x[t] - mx) * (y[t - lag] - my);
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  GaussianStream g(seed, 0);
  std::vector<double> v(n);
  for (double& x : v) x = g.normal();
  return v;
}

// Exact lag-n autocorrelation of ARFIMA(0, d, 0) with an infinite kernel.
double arfima_rho(double d, double n) {
  return std::exp(std::lgamma(1 - d) + std::lgamma(n + d) - std::lgamma(d) - std::lgamma(n + 1 - d));
}

}  // namespace

TEST_CASE("lag grids") {
  const auto l = log_lags(1, 1000, 25);
  CHECK(l.front() == 1);
  CHECK(l.back() == 1000);
  CHECK(std::is_sorted(l.begin(), l.end()));
  CHECK(std::adjacent_find(l.begin(), l.end()) == l.end());
  CHECK(default_lags(100000).back() == 1000);
  CHECK(parse_lag_spec("1,5,10") == std::vector<std::size_t>{1, 5, 10});
  CHECK(parse_lag_spec("lin:2:10:4") == std::vector<std::size_t>{2, 6, 10});
  CHECK(parse_lag_spec("log:1:100") == log_lags(1, 100, 25));
  CHECK(parse_lag_spec("log:1:100:10") == log_lags(1, 100, 10));
  CHECK_THROWS_AS(parse_lag_spec("geo:1:2"), ParameterError);
  CHECK_THROWS_AS(parse_lag_spec("1,x"), ParameterError);
}

TEST_CASE("matches a direct double loop") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (std::size_t n : {7u, 64u, 501u}) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = nd(rng) + 3.0;
      y[i] = 0.5 * x[i] + nd(rng);
    }
    std::vector<std::size_t> lags;
    for (std::size_t k = 0; k + 2 < n; ++k) lags.push_back(k);
    const auto c = crosscorr(x, y, lags);
    const auto a = autocorr(x, lags);
    for (std::size_t i = 0; i < lags.size(); ++i) {
      CHECK(c.values[i] == doctest::Approx(naive_cross(x, y, lags[i])).epsilon(1e-12));
      if (lags[i] > 0) CHECK(a.values[i] == doctest::Approx(naive_cross(x, x, lags[i])).epsilon(1e-12));
      CHECK(c.n_samples[i] == n - lags[i]);
    }
  }
}

TEST_CASE("identities") {
  const auto x = gaussian(1000, 1);
  const auto y = gaussian(1000, 2);
  const std::vector<std::size_t> lags{0, 1, 3, 20};
  const auto a = autocorr(x, lags);
  CHECK(a.values[0] == 1.0);
  const auto xx = crosscorr(x, x, lags);
  for (std::size_t i = 0; i < lags.size(); ++i) CHECK(xx.values[i] == doctest::Approx(a.values[i]).epsilon(1e-14));
  const std::vector<std::size_t> zero{0};
  CHECK(crosscorr(x, y, zero).values[0] == crosscorr(y, x, zero).values[0]);
  for (double v : crosscorr(x, y, lags).values) CHECK(std::abs(v) <= 1.0);
  CHECK(a.kind == CorrKind::autocorrelation);
  CHECK(crosscorr(x, y, lags).kind == CorrKind::cross);
}

TEST_CASE("invariant under affine rescaling") {
  const auto x = gaussian(2000, 3);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = 4.0 * x[i] - 7.0;
  const std::vector<std::size_t> lags{1, 2, 5, 50};
  const auto a = autocorr(x, lags), b = autocorr(z, lags);
  for (std::size_t i = 0; i < lags.size(); ++i) CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-12));
}

TEST_CASE("white noise sits in the null band") {
  const auto x = gaussian(100000, 5);
  const auto y = gaussian(100000, 6);
  std::vector<std::size_t> lags(100);
  std::iota(lags.begin(), lags.end(), 1);
  const double band = null_band(x.size());
  CHECK(band == doctest::Approx(2.0 / std::sqrt(100000.0)));
  std::size_t a_in = 0, c_in = 0;
  const auto a = autocorr(x, lags);
  const auto c = crosscorr(x, y, lags);
  for (std::size_t i = 0; i < lags.size(); ++i) {
    a_in += std::abs(a.values[i]) < band;
    c_in += std::abs(c.values[i]) < band;
  }
  CHECK(a_in >= 95);
  CHECK(c_in >= 95);
}

TEST_CASE("errors") {
  const auto x = gaussian(10, 1);
  const auto y = gaussian(11, 1);
  const std::vector<std::size_t> lags{1};
  CHECK_THROWS_AS(crosscorr(x, y, lags), ParameterError);
  const std::vector<std::size_t> too_far{8};
  CHECK_THROWS_AS(autocorr(x, too_far), ParameterError);
  const std::vector<double> flat(10, 2.5);
  CHECK_THROWS_AS(autocorr(flat, lags), DegenerateInputError);
  CHECK_THROWS_AS(crosscorr(x, flat, lags), DegenerateInputError);
  CHECK_THROWS_AS(log_lags(0, 10), ParameterError);
}

TEST_CASE("FIARCH ACF closed form") {
  for (double d : {0.05, 0.2, 0.3, 0.45}) {
    CHECK(fiarch_acf_oracle(d, 1) == doctest::Approx(d / (1 - d)).epsilon(1e-13));
    // lgamma differences of large arguments cost a few digits.
    for (std::size_t n : {1u, 2u, 10u, 100u, 1000u, 100000u}) {
      CHECK(fiarch_acf_oracle(d, n) == doctest::Approx(oracle::fiarch_acf(d, n)).epsilon(1e-9));
    }
    double prev = 1.0;
    for (std::size_t n = 1; n < 2000; ++n) {
      const double v = fiarch_acf_oracle(d, n);
      REQUIRE(v < prev);
      REQUIRE(v > 0.0);
      prev = v;
    }
    const double stirling = std::tgamma(1 - d) / std::tgamma(d) * std::pow(1e4, 2 * d - 1);
    CHECK(std::abs(fiarch_acf_oracle(d, 10000) / stirling - 1) < 0.02);
  }
}

TEST_CASE("ARFIMA d = 0.4 auto-correlation slope follows the finite-sample expectation") {
  // The full-sample-mean estimator centers on (rho(n) - V) / (1 - V), where V
  // is the variance of the sample mean in units of the process variance. For
  // long memory V is not negligible at N = 2^17, which steepens the log-log
  // slope on [10, 1000] from 2d - 1 = -0.2.
  const double d = 0.4;
  const std::size_t n = 1u << 17;
  double vbar = 1.0 / n;
  for (std::size_t k = 1; k < n; ++k) vbar += 2.0 * (1.0 - static_cast<double>(k) / n) * arfima_rho(d, k) / n;
  auto expected = [&](double lag) { return (arfima_rho(d, lag) - vbar) / (1 - vbar); };
  const double expected_slope = (std::log10(expected(1000)) - std::log10(expected(10))) / 2.0;

  const std::vector<std::size_t> lags{10, 1000};
  double slope = 0;
  const int runs = 4;
  double a10 = 0, a1000 = 0;
  for (int r = 0; r < runs; ++r) {
    const SeriesPair s = gen_arfima(d, n, 10000, 50000, 500 + r);
    const auto a = autocorr(s.x, lags);
    a10 += a.values[0] / runs;
    a1000 += a.values[1] / runs;
  }
  slope = (std::log10(a1000) - std::log10(a10)) / 2.0;
  CHECK(std::abs(slope - expected_slope) <= 0.05);
  CHECK(slope < -0.2);
}
