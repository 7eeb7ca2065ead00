#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fraccouple/generators.hpp"

namespace fraccouple {

struct DfaResult {
  std::vector<std::size_t> window_sizes;
  /// F(n), one per window size.
  std::vector<double> fluctuations;
  double alpha = 0.0;
  double fit_stderr = 0.0;
  std::size_t fit_min = 0;
  std::size_t fit_max = 0;
  std::size_t fit_points = 0;
  int order = 1;
};

struct DfaOptions {
  /// Detrending polynomial order, 1..3.
  int order = 1;
  /// Empty means default_dfa_windows(N, order).
  std::vector<std::size_t> windows;
  /// Unset means [16, N/8].
  std::optional<std::size_t> fit_min;
  std::optional<std::size_t> fit_max;
};

inline constexpr int kMaxDfaOrder = 3;
inline constexpr std::size_t kMinFitPoints = 5;

/// 20 log-spaced sizes per decade from max(2 (order + 2), 8) to N/4.
std::vector<std::size_t> default_dfa_windows(std::size_t n, int order = 1);

/// Detrended fluctuation analysis.
///
/// The profile is the cumulative sum of the mean-subtracted series. For each
/// window size n it is cut into non-overlapping segments from the start and
/// again from the end, a least-squares polynomial of the given order is
/// removed from every segment, and F(n) is the rms of the pooled residuals.
/// alpha is the OLS slope of log10 F against log10 n over the fit range.
DfaResult dfa(std::span<const double> x, const DfaOptions& options = {});

/// Runs dfa on both components of a pair with the same options. Volatility
/// processes are analyzed through |x_t| and |y_t|, linear ones raw.
std::pair<DfaResult, DfaResult> dfa_crossover_scan(const SeriesPair& pair, const DfaOptions& options = {});

}  // namespace fraccouple
