#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fraccouple/rng.hpp"

namespace fraccouple {

enum class Process { arfima, arfima2, fiarch, fiarch2 };

std::string_view to_string(Process p) noexcept;
/// Throws ParameterError for unknown names.
Process parse_process(std::string_view name);
bool is_two_component(Process p) noexcept;
bool is_volatility(Process p) noexcept;

inline constexpr std::size_t kDefaultKernelLength = 10000;
inline constexpr std::size_t kMaxDefaultBurnIn = 100000;

/// How the volatility processes account for weight mass beyond lag L.
enum class VolatilityTail {
  /// Lags beyond L contribute their expected normalized magnitude, i.e.
  /// sigma_t gains a constant tail_mass term. Keeps the recursion stationary.
  mean_field,
  /// Retained weights are scaled by 1 / (1 - tail_mass). Unit weight mass on
  /// a finite window puts a unit root in the |x_t| recursion.
  renormalize,
};

std::string_view to_string(VolatilityTail t) noexcept;
VolatilityTail parse_volatility_tail(std::string_view name);

struct GenParams {
  Process process = Process::arfima;
  double d1 = 0.4;
  double d2 = 0.4;
  double w = 1.0;
  std::size_t n = 1u << 17;
  std::size_t kernel_length = kDefaultKernelLength;
  /// Unset means max(L, min(10 L, 1e5)).
  std::optional<std::size_t> burn_in;
  std::uint64_t seed = 42;
  /// Widens the coupling range from [0.5, 1] to [0, 1].
  bool allow_full_w = false;
  VolatilityTail tail = VolatilityTail::mean_field;

  std::size_t resolved_burn_in() const noexcept;
  /// Throws ParameterError naming the offending field.
  void validate() const;
};

/// Which GaussianStream sub-streams feed the x and y innovations.
struct StreamAssignment {
  std::uint64_t x = kStreamX;
  std::uint64_t y = kStreamY;
};

struct SeriesPair {
  std::vector<double> x;
  /// Empty for single-component processes.
  std::vector<double> y;
  GenParams params;
  double tail_mass_x = 0.0;
  double tail_mass_y = 0.0;
  /// Realized sample means of |x_t|, |y_t| (volatility processes only).
  std::optional<double> mu_x;
  std::optional<double> mu_y;
  /// Realized sample means of the (composite) volatility driving x and y.
  std::optional<double> mean_vol_x;
  std::optional<double> mean_vol_y;
  bool surrogate = false;
  std::vector<std::string> warnings;

  bool has_y() const noexcept { return !y.empty(); }
};

/// x_t = sum_n a_n(d1) x_{t-n} + eps_t, innovations from stream `stream`.
SeriesPair gen_arfima(const GenParams& params, std::uint64_t stream = kStreamX);
SeriesPair gen_arfima(double d, std::size_t n, std::size_t kernel_length, std::size_t burn_in,
                      std::uint64_t seed);

/// Two ARFIMA components whose memory terms are mixed with weights W, 1-W.
SeriesPair gen_arfima2(const GenParams& params, StreamAssignment streams = {});

/// x_t = sigma_t eps_t with sigma_t = sum_n a_n(d) |x_{t-n}| / mu_x.
SeriesPair gen_fiarch(const GenParams& params, std::uint64_t stream = kStreamX);
SeriesPair gen_fiarch(double d, std::size_t n, std::size_t kernel_length, std::size_t burn_in,
                      std::uint64_t seed);

/// Two FIARCH components driven by W-mixed composite volatilities.
SeriesPair gen_fiarch2(const GenParams& params, StreamAssignment streams = {});

/// Dispatches on params.process.
SeriesPair generate(const GenParams& params);

}  // namespace fraccouple
