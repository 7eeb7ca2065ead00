#include "fraccouple/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fraccouple/errors.hpp"
#include "fraccouple/kernel.hpp"
#include "history.hpp"

namespace fraccouple {

namespace {

// E|eps| for eps ~ N(0,1); seeds the running mean of |x_t| and fills the
// pre-sample absolute history so that sigma_1 = 1.
const double kMeanAbsNormal = std::sqrt(2.0 / std::numbers::pi);

constexpr std::size_t kStabilityCheckEvery = 4096;
constexpr double kStableLow = 0.5;
constexpr double kStableHigh = 2.0;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_d(const char* name, double d, double lo, bool lo_inclusive, const char* range) {
  const bool ok = (lo_inclusive ? d >= lo : d > lo) && d < 0.5;
  if (!ok) throw ParameterError(std::string(name) + " = " + fmt(d) + " outside " + range);
}

/// Running mean over {mu0, v_1, ..., v_k}; the seed acts as one pseudo-sample.
class RunningMean {
 public:
  explicit RunningMean(double seed) : sum_(seed) {}
  double value() const noexcept { return sum_ / count_; }
  void add(double v) noexcept {
    sum_ += v;
    count_ += 1.0;
  }

 private:
  double sum_;
  double count_ = 1.0;
};

void check_stability(double vol_sum, std::size_t steps, const char* which) {
  const double mean = vol_sum / static_cast<double>(steps);
  if (!(mean >= kStableLow && mean <= kStableHigh)) {
    throw StabilityError(std::string("fiarch: mean composite volatility of ") + which + " = " + fmt(mean) +
                         " left [0.5, 2] after " + std::to_string(steps) + " steps");
  }
}

/// Kernel actually used by the volatility recursion plus the constant that
/// stands in for the truncated lags.
struct VolatilityKernel {
  FracKernel kernel;
  double tail_term;
};

VolatilityKernel volatility_kernel(const FracKernel& raw, VolatilityTail tail) {
  if (tail == VolatilityTail::renormalize) return {raw.renormalized(), 0.0};
  return {raw, raw.tail_mass()};
}

SeriesPair make_output(const GenParams& p) {
  SeriesPair out;
  out.params = p;
  out.params.burn_in = p.resolved_burn_in();
  if (p.allow_full_w && is_two_component(p.process) && p.w < 0.5) {
    out.warnings.push_back("coupling W = " + fmt(p.w) + " is below 0.5 (permitted by allow_full_w)");
  }
  return out;
}

}  // namespace

std::string_view to_string(Process p) noexcept {
  switch (p) {
    case Process::arfima: return "arfima";
    case Process::arfima2: return "arfima2";
    case Process::fiarch: return "fiarch";
    case Process::fiarch2: return "fiarch2";
  }
  return "unknown";
}

Process parse_process(std::string_view name) {
  for (Process p : {Process::arfima, Process::arfima2, Process::fiarch, Process::fiarch2}) {
    if (name == to_string(p)) return p;
  }
  throw ParameterError("unknown process '" + std::string(name) + "' (expected arfima, arfima2, fiarch, fiarch2)");
}

std::string_view to_string(VolatilityTail t) noexcept {
  return t == VolatilityTail::mean_field ? "mean_field" : "renormalize";
}

VolatilityTail parse_volatility_tail(std::string_view name) {
  if (name == "mean_field") return VolatilityTail::mean_field;
  if (name == "renormalize") return VolatilityTail::renormalize;
  throw ParameterError("unknown volatility tail '" + std::string(name) + "' (expected mean_field, renormalize)");
}

bool is_two_component(Process p) noexcept { return p == Process::arfima2 || p == Process::fiarch2; }
bool is_volatility(Process p) noexcept { return p == Process::fiarch || p == Process::fiarch2; }

std::size_t GenParams::resolved_burn_in() const noexcept {
  if (burn_in) return *burn_in;
  return std::max(kernel_length, std::min(10 * kernel_length, kMaxDefaultBurnIn));
}

void GenParams::validate() const {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (kernel_length < 1) throw ParameterError("kernel length L must be >= 1");
  if (resolved_burn_in() < kernel_length) {
    throw ParameterError("burn_in = " + std::to_string(*burn_in) + " must be >= kernel length L = " +
                         std::to_string(kernel_length));
  }
  switch (process) {
    case Process::arfima:
      if (!(d1 > -0.5 && d1 < 0.5)) throw ParameterError("d1 = " + fmt(d1) + " outside (-0.5, 0.5)");
      break;
    case Process::fiarch: require_d("d1", d1, 0.0, false, "(0, 0.5)"); break;
    case Process::arfima2:
      require_d("d1", d1, 0.0, true, "[0, 0.5)");
      require_d("d2", d2, 0.0, true, "[0, 0.5)");
      break;
    case Process::fiarch2:
      require_d("d1", d1, 0.0, false, "(0, 0.5)");
      require_d("d2", d2, 0.0, false, "(0, 0.5)");
      break;
  }
  if (is_two_component(process)) {
    const double lo = allow_full_w ? 0.0 : 0.5;
    if (!(w >= lo && w <= 1.0)) {
      throw ParameterError("W = " + fmt(w) + " outside [" + fmt(lo) + ", 1]" +
                           (allow_full_w ? "" : " (allow_full_w widens the range to [0, 1])"));
    }
  }
}

SeriesPair gen_arfima(const GenParams& params, std::uint64_t stream) {
  GenParams p = params;
  p.process = Process::arfima;
  p.validate();
  SeriesPair out = make_output(p);
  const FracKernel kernel(p.d1, p.kernel_length);
  out.tail_mass_x = kernel.tail_mass();

  const std::size_t burn = p.resolved_burn_in();
  GaussianStream eps(p.seed, stream);
  detail::History hist(p.kernel_length, 0.0);
  out.x.resize(p.n);
  for (std::size_t t = 0; t < burn + p.n; ++t) {
    const double memory = detail::blocked_dot(kernel.reversed(), hist.window());
    const double x = memory + eps.normal();
    hist.push(x);
    if (t >= burn) out.x[t - burn] = x;
  }
  return out;
}

SeriesPair gen_arfima(double d, std::size_t n, std::size_t kernel_length, std::size_t burn_in,
                      std::uint64_t seed) {
  GenParams p;
  p.process = Process::arfima;
  p.d1 = d;
  p.n = n;
  p.kernel_length = kernel_length;
  p.burn_in = burn_in;
  p.seed = seed;
  return gen_arfima(p);
}

SeriesPair gen_arfima2(const GenParams& params, StreamAssignment streams) {
  GenParams p = params;
  p.process = Process::arfima2;
  p.validate();
  SeriesPair out = make_output(p);
  const FracKernel kx(p.d1, p.kernel_length);
  const FracKernel ky(p.d2, p.kernel_length);
  out.tail_mass_x = kx.tail_mass();
  out.tail_mass_y = ky.tail_mass();

  const double w = p.w;
  const double cw = 1.0 - p.w;
  const std::size_t burn = p.resolved_burn_in();
  GaussianStream ex(p.seed, streams.x);
  GaussianStream ey(p.seed, streams.y);
  detail::History hx(p.kernel_length, 0.0);
  detail::History hy(p.kernel_length, 0.0);
  out.x.resize(p.n);
  out.y.resize(p.n);
  for (std::size_t t = 0; t < burn + p.n; ++t) {
    const double mx = detail::blocked_dot(kx.reversed(), hx.window());
    const double my = detail::blocked_dot(ky.reversed(), hy.window());
    const double x = (w * mx + cw * my) + ex.normal();
    const double y = (cw * mx + w * my) + ey.normal();
    hx.push(x);
    hy.push(y);
    if (t >= burn) {
      out.x[t - burn] = x;
      out.y[t - burn] = y;
    }
  }
  return out;
}

SeriesPair gen_fiarch(const GenParams& params, std::uint64_t stream) {
  GenParams p = params;
  p.process = Process::fiarch;
  p.validate();
  SeriesPair out = make_output(p);
  const FracKernel raw(p.d1, p.kernel_length);
  const VolatilityKernel vk = volatility_kernel(raw, p.tail);
  out.tail_mass_x = raw.tail_mass();

  const std::size_t burn = p.resolved_burn_in();
  GaussianStream eps(p.seed, stream);
  detail::History habs(p.kernel_length, kMeanAbsNormal);
  RunningMean mu(kMeanAbsNormal);
  double vol_all = 0.0;
  double vol_sample = 0.0;
  double abs_sample = 0.0;
  out.x.resize(p.n);
  for (std::size_t t = 0; t < burn + p.n; ++t) {
    const double sigma = detail::blocked_dot(vk.kernel.reversed(), habs.window()) / mu.value() + vk.tail_term;
    const double x = sigma * eps.normal();
    const double ax = std::abs(x);
    habs.push(ax);
    mu.add(ax);
    vol_all += sigma;
    if ((t + 1) % kStabilityCheckEvery == 0 && t + 1 > p.kernel_length) check_stability(vol_all, t + 1, "x");
    if (t >= burn) {
      out.x[t - burn] = x;
      vol_sample += sigma;
      abs_sample += ax;
    }
  }
  const double n = static_cast<double>(p.n);
  out.mu_x = abs_sample / n;
  out.mean_vol_x = vol_sample / n;
  return out;
}

SeriesPair gen_fiarch(double d, std::size_t n, std::size_t kernel_length, std::size_t burn_in,
                      std::uint64_t seed) {
  GenParams p;
  p.process = Process::fiarch;
  p.d1 = d;
  p.n = n;
  p.kernel_length = kernel_length;
  p.burn_in = burn_in;
  p.seed = seed;
  return gen_fiarch(p);
}

SeriesPair gen_fiarch2(const GenParams& params, StreamAssignment streams) {
  GenParams p = params;
  p.process = Process::fiarch2;
  p.validate();
  SeriesPair out = make_output(p);
  const FracKernel raw_x(p.d1, p.kernel_length);
  const FracKernel raw_y(p.d2, p.kernel_length);
  const VolatilityKernel kx = volatility_kernel(raw_x, p.tail);
  const VolatilityKernel ky = volatility_kernel(raw_y, p.tail);
  out.tail_mass_x = raw_x.tail_mass();
  out.tail_mass_y = raw_y.tail_mass();

  const double w = p.w;
  const double cw = 1.0 - p.w;
  const std::size_t burn = p.resolved_burn_in();
  GaussianStream ex(p.seed, streams.x);
  GaussianStream ey(p.seed, streams.y);
  detail::History hx(p.kernel_length, kMeanAbsNormal);
  detail::History hy(p.kernel_length, kMeanAbsNormal);
  RunningMean mux(kMeanAbsNormal);
  RunningMean muy(kMeanAbsNormal);
  double volx_all = 0.0, voly_all = 0.0;
  double volx_sample = 0.0, voly_sample = 0.0;
  double absx_sample = 0.0, absy_sample = 0.0;
  out.x.resize(p.n);
  out.y.resize(p.n);
  for (std::size_t t = 0; t < burn + p.n; ++t) {
    const double sx = detail::blocked_dot(kx.kernel.reversed(), hx.window()) / mux.value() + kx.tail_term;
    const double sy = detail::blocked_dot(ky.kernel.reversed(), hy.window()) / muy.value() + ky.tail_term;
    const double vx = w * sx + cw * sy;
    const double vy = cw * sx + w * sy;
    const double x = vx * ex.normal();
    const double y = vy * ey.normal();
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    hx.push(ax);
    hy.push(ay);
    mux.add(ax);
    muy.add(ay);
    volx_all += vx;
    voly_all += vy;
    if ((t + 1) % kStabilityCheckEvery == 0 && t + 1 > p.kernel_length) {
      check_stability(volx_all, t + 1, "x");
      check_stability(voly_all, t + 1, "y");
    }
    if (t >= burn) {
      out.x[t - burn] = x;
      out.y[t - burn] = y;
      volx_sample += vx;
      voly_sample += vy;
      absx_sample += ax;
      absy_sample += ay;
    }
  }
  const double n = static_cast<double>(p.n);
  out.mu_x = absx_sample / n;
  out.mu_y = absy_sample / n;
  out.mean_vol_x = volx_sample / n;
  out.mean_vol_y = voly_sample / n;
  return out;
}

SeriesPair generate(const GenParams& params) {
  switch (params.process) {
    case Process::arfima: return gen_arfima(params);
    case Process::arfima2: return gen_arfima2(params);
    case Process::fiarch: return gen_fiarch(params);
    case Process::fiarch2: return gen_fiarch2(params);
  }
  throw ParameterError("unknown process");
}

}  // namespace fraccouple
