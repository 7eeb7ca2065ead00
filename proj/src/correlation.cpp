#include "fraccouple/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fraccouple/errors.hpp"

namespace fraccouple {

namespace {

struct Moments {
  double mean;
  double ss;  // sum of squared deviations
};

Moments moments(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, ss};
}

void check_lags(std::size_t n, std::span<const std::size_t> lags) {
  if (n < 3) throw ParameterError("correlation: series needs at least 3 samples");
  for (std::size_t lag : lags) {
    if (lag >= n) {
      throw ParameterError("correlation: lag " + std::to_string(lag) + " >= series length " + std::to_string(n));
    }
    if (lag + 2 >= n) {
      throw ParameterError("correlation: series length " + std::to_string(n) + " must exceed max lag + 2");
    }
  }
}

std::size_t parse_count(const std::string& tok, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size() || tok.front() == '-') {
    throw ParameterError("lag spec '" + spec + "': '" + tok + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<std::size_t> log_lags(std::size_t lo, std::size_t hi, int per_decade) {
  if (lo < 1 || hi < lo) throw ParameterError("log_lags: need 1 <= lo <= hi");
  if (per_decade < 1) throw ParameterError("log_lags: per_decade must be >= 1");
  std::vector<std::size_t> out;
  const double l0 = std::log10(static_cast<double>(lo));
  const double l1 = std::log10(static_cast<double>(hi));
  const auto steps = static_cast<long>(std::ceil((l1 - l0) * per_decade - 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double e = std::min(l0 + static_cast<double>(k) / per_decade, l1);
    auto v = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
    v = std::clamp(v, lo, hi);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

std::vector<std::size_t> default_lags(std::size_t n) { return log_lags(1, std::max<std::size_t>(1, n / 100), 25); }

std::vector<std::size_t> parse_lag_spec(const std::string& spec) {
  std::vector<std::string> parts;
  const bool ranged = spec.rfind("log:", 0) == 0 || spec.rfind("lin:", 0) == 0;
  {
    std::stringstream ss(ranged ? spec.substr(4) : spec);
    std::string tok;
    while (std::getline(ss, tok, ranged ? ':' : ',')) parts.push_back(tok);
  }
  if (parts.empty()) throw ParameterError("empty lag spec");
  if (!ranged) {
    std::vector<std::size_t> out;
    for (const auto& p : parts) out.push_back(parse_count(p, spec));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw ParameterError("lag spec '" + spec + "': expected KIND:LO:HI[:X]");
  }
  const std::size_t lo = parse_count(parts[0], spec);
  const std::size_t hi = parse_count(parts[1], spec);
  if (spec[1] == 'o') {
    const int per = parts.size() == 3 ? static_cast<int>(parse_count(parts[2], spec)) : 25;
    return log_lags(lo, hi, per);
  }
  const std::size_t step = parts.size() == 3 ? parse_count(parts[2], spec) : 1;
  if (step == 0 || hi < lo) throw ParameterError("lag spec '" + spec + "': need LO <= HI and STEP >= 1");
  std::vector<std::size_t> out;
  for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

std::vector<double> abs_values(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::abs(v); });
  return out;
}

CorrFunction autocorr(std::span<const double> x, std::span<const std::size_t> lags, Transform transform) {
  CorrFunction out = crosscorr(x, x, lags, transform);
  out.kind = CorrKind::autocorrelation;
  for (std::size_t i = 0; i < out.lags.size(); ++i) {
    if (out.lags[i] == 0) out.values[i] = 1.0;
  }
  return out;
}

CorrFunction crosscorr(std::span<const double> x, std::span<const double> y, std::span<const std::size_t> lags,
                       Transform transform) {
  if (x.size() != y.size()) {
    throw ParameterError("crosscorr: length mismatch " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  check_lags(n, lags);
  const Moments mx = moments(x);
  const Moments my = x.data() == y.data() ? mx : moments(y);
  if (!(mx.ss > 0.0) || !(my.ss > 0.0)) throw DegenerateInputError("correlation undefined for a constant series");
  const double norm = std::sqrt(mx.ss) * std::sqrt(my.ss);

  CorrFunction out;
  out.kind = CorrKind::cross;
  out.transform = transform;
  out.lags.assign(lags.begin(), lags.end());
  out.values.resize(lags.size());
  out.n_samples.resize(lags.size());
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const std::size_t lag = lags[i];
    double s = 0.0;
    for (std::size_t t = lag; t < n; ++t) s += (x[t] - mx.mean) * (y[t - lag] - my.mean);
    out.values[i] = s / norm;
    out.n_samples[i] = n - lag;
  }
  return out;
}

double fiarch_acf_oracle(double d, std::size_t n) {
  if (!(d > 0.0 && d < 0.5)) throw ParameterError("fiarch_acf_oracle: d must lie in (0, 0.5)");
  if (n < 1) throw ParameterError("fiarch_acf_oracle: lag must be >= 1");
  const double nn = static_cast<double>(n);
  return std::exp(std::lgamma(1.0 - d) + std::lgamma(nn + d) - std::lgamma(d) - std::lgamma(nn + 1.0 - d));
}

double null_band(std::size_t n) noexcept { return 2.0 / std::sqrt(static_cast<double>(n)); }

}  // namespace fraccouple
