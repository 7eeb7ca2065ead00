#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fraccouple {

enum class CorrKind { autocorrelation, cross };
enum class Transform { raw, absolute };

/// Sample correlation values on a lag grid.
struct CorrFunction {
  std::vector<std::size_t> lags;
  std::vector<double> values;
  /// Number of (t, t-n) pairs that entered each value.
  std::vector<std::size_t> n_samples;
  CorrKind kind = CorrKind::autocorrelation;
  Transform transform = Transform::raw;
};

/// Log-spaced integer lags from `lo` to `hi` inclusive with `per_decade`
/// points per decade, rounded and deduplicated.
std::vector<std::size_t> log_lags(std::size_t lo, std::size_t hi, int per_decade = 25);

/// Default grid: log_lags(1, max(1, N/100), 25).
std::vector<std::size_t> default_lags(std::size_t n);

/// Parses "log:LO:HI[:PER_DECADE]", "lin:LO:HI[:STEP]" or a comma list "1,2,10".
std::vector<std::size_t> parse_lag_spec(const std::string& spec);

/// Absolute values of a series; callers apply it explicitly and record
/// Transform::absolute on the result.
std::vector<double> abs_values(std::span<const double> x);

/// Pearson auto-correlation A(n) of x_t and x_{t-n}. The lag-n value is
///   sum_{t=n}^{N-1} (x_t - m)(x_{t-n} - m) / sum_t (x_t - m)^2
/// with the full-sample mean m, which keeps the sequence positive
/// semidefinite and every value inside [-1, 1].
CorrFunction autocorr(std::span<const double> x, std::span<const std::size_t> lags,
                      Transform transform = Transform::raw);

/// Cross-correlation C(n) between x_t and y_{t-n} for n >= 0, normalized by
/// the full-sample standard deviations of both series.
CorrFunction crosscorr(std::span<const double> x, std::span<const double> y,
                       std::span<const std::size_t> lags, Transform transform = Transform::raw);

/// Closed-form lag-n autocorrelation of |x_t| for the single FIARCH process,
/// Γ(1-d) Γ(n+d) / (Γ(d) Γ(n+1-d)), evaluated through lgamma.
double fiarch_acf_oracle(double d, std::size_t n);

/// 2 / sqrt(N): the 95% band for sample correlations of uncorrelated series.
double null_band(std::size_t n) noexcept;

}  // namespace fraccouple
