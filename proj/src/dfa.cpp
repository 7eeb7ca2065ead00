#include "fraccouple/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraccouple/correlation.hpp"
#include "fraccouple/errors.hpp"

namespace fraccouple {

namespace {

/// Orthonormal polynomial basis of degree 0..order on n equally spaced
/// points, row-major (order + 1) x n, from modified Gram-Schmidt on powers
/// of the abscissa mapped to [-1, 1].
std::vector<double> orthonormal_basis(std::size_t n, int order) {
  const std::size_t k = static_cast<std::size_t>(order) + 1;
  std::vector<double> q(k * n);
  const double half = 0.5 * static_cast<double>(n - 1);
  for (std::size_t j = 0; j < k; ++j) {
    double* row = q.data() + j * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (static_cast<double>(i) - half) / half;
      row[i] = std::pow(u, static_cast<double>(j));
    }
    for (std::size_t pass = 0; pass < 2; ++pass) {
      for (std::size_t m = 0; m < j; ++m) {
        const double* prev = q.data() + m * n;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += row[i] * prev[i];
        for (std::size_t i = 0; i < n; ++i) row[i] -= dot * prev[i];
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += row[i] * row[i];
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) row[i] /= norm;
  }
  return q;
}

double segment_residual_ss(const double* y, std::size_t n, const std::vector<double>& basis, std::size_t k,
                           std::vector<double>& resid) {
  resid.assign(y, y + n);
  for (std::size_t j = 0; j < k; ++j) {
    const double* row = basis.data() + j * n;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += row[i] * y[i];
    for (std::size_t i = 0; i < n; ++i) resid[i] -= c * row[i];
  }
  double ss = 0.0;
  for (double r : resid) ss += r * r;
  return ss;
}

}  // namespace

std::vector<std::size_t> default_dfa_windows(std::size_t n, int order) {
  const std::size_t lo = std::max<std::size_t>(2 * static_cast<std::size_t>(order + 2), 8);
  const std::size_t hi = n / 4;
  if (hi < lo) throw ParameterError("dfa: series of length " + std::to_string(n) + " too short for default windows");
  return log_lags(lo, hi, 20);
}

DfaResult dfa(std::span<const double> x, const DfaOptions& options) {
  const int order = options.order;
  if (order < 1 || order > kMaxDfaOrder) throw ParameterError("dfa: order must be 1..3");
  const std::size_t n_total = x.size();
  std::vector<std::size_t> windows =
      options.windows.empty() ? default_dfa_windows(n_total, order) : options.windows;
  if (!std::is_sorted(windows.begin(), windows.end()) ||
      std::adjacent_find(windows.begin(), windows.end()) != windows.end()) {
    throw ParameterError("dfa: window sizes must be strictly increasing");
  }
  if (windows.front() < static_cast<std::size_t>(order) + 2) {
    throw ParameterError("dfa: window sizes must be >= order + 2");
  }
  if (n_total < 4 * windows.back()) {
    throw ParameterError("dfa: series length " + std::to_string(n_total) + " < 4 x largest window " +
                         std::to_string(windows.back()));
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n_total);
  std::vector<double> profile(n_total);
  double acc = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < n_total; ++i) {
    const double dev = x[i] - mean;
    var += dev * dev;
    acc += dev;
    profile[i] = acc;
  }
  if (!(var > 0.0)) throw DegenerateInputError("dfa: zero-variance series");

  DfaResult out;
  out.order = order;
  out.window_sizes = windows;
  out.fluctuations.reserve(windows.size());
  const std::size_t k = static_cast<std::size_t>(order) + 1;
  std::vector<double> resid;
  for (std::size_t n : windows) {
    const std::vector<double> basis = orthonormal_basis(n, order);
    const std::size_t segments = n_total / n;
    const std::size_t offset = n_total - segments * n;
    double ss = 0.0;
    for (std::size_t s = 0; s < segments; ++s) {
      ss += segment_residual_ss(profile.data() + s * n, n, basis, k, resid);
      ss += segment_residual_ss(profile.data() + offset + s * n, n, basis, k, resid);
    }
    const double f = std::sqrt(ss / static_cast<double>(2 * segments * n));
    if (!(f > 0.0)) throw DegenerateInputError("dfa: zero fluctuation at window " + std::to_string(n));
    out.fluctuations.push_back(f);
  }

  out.fit_min = options.fit_min.value_or(16);
  out.fit_max = options.fit_max.value_or(n_total / 8);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < out.fit_min || windows[i] > out.fit_max) continue;
    pts.emplace_back(std::log10(static_cast<double>(windows[i])), std::log10(out.fluctuations[i]));
  }
  out.fit_points = pts.size();
  if (pts.size() < kMinFitPoints) {
    throw ParameterError("dfa: fit range [" + std::to_string(out.fit_min) + ", " + std::to_string(out.fit_max) +
                         "] holds " + std::to_string(pts.size()) + " window sizes, need >= 5");
  }
  const double m = static_cast<double>(pts.size());
  for (auto [lx, ly] : pts) {
    sx += lx;
    sy += ly;
  }
  const double mx = sx / m;
  const double my = sy / m;
  for (auto [lx, ly] : pts) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  out.alpha = sxy / sxx;
  const double intercept = my - out.alpha * mx;
  double ssr = 0.0;
  for (auto [lx, ly] : pts) {
    const double r = ly - (intercept + out.alpha * lx);
    ssr += r * r;
  }
  out.fit_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  return out;
}

std::pair<DfaResult, DfaResult> dfa_crossover_scan(const SeriesPair& pair, const DfaOptions& options) {
  if (!pair.has_y()) throw ParameterError("dfa_crossover_scan: pair has no y component");
  if (pair.x.size() != pair.y.size()) throw ParameterError("dfa_crossover_scan: component lengths differ");
  if (is_volatility(pair.params.process)) {
    return {dfa(abs_values(pair.x), options), dfa(abs_values(pair.y), options)};
  }
  return {dfa(pair.x, options), dfa(pair.y, options)};
}

}  // namespace fraccouple
