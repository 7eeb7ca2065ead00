#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraccouple {

/// Truncated fractional-integration weights a_1..a_L for a scaling parameter d.
///
/// The weights follow a_n(d) = d Γ(n-d) / (Γ(1-d) Γ(n+1)) and are built from
/// the ratio recurrence a_{n+1} = a_n (n - d) / (n + 1) seeded at a_1 = d, so
/// no Gamma function is ever evaluated at large arguments. Instances are
/// immutable once built and can be shared between threads.
class FracKernel {
 public:
  /// Throws ParameterError unless -0.5 < d < 0.5 and length >= 1.
  FracKernel(double d, std::size_t length);

  double d() const noexcept { return d_; }
  std::size_t length() const noexcept { return weights_.size(); }

  /// 1 - sum of the retained weights. Only meaningful as a truncation
  /// error for d > 0, where the infinite sum is 1.
  double tail_mass() const noexcept { return tail_mass_; }

  /// a_1..a_L in lag order.
  std::span<const double> weights() const noexcept { return weights_; }

  /// a_L..a_1, i.e. the weights laid out to pair with a history window
  /// stored oldest-first.
  std::span<const double> reversed() const noexcept { return reversed_; }

  /// a_n for 1 <= n <= L; throws IndexError otherwise.
  double weight_at(std::size_t n) const;

  /// Copy whose weights are scaled to sum to exactly one (up to rounding).
  /// Used by the volatility processes, which need unit weight mass.
  FracKernel renormalized() const;

 private:
  FracKernel() = default;
  void rebuild_reversed();

  double d_ = 0.0;
  double tail_mass_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> reversed_;
};

/// Convenience wrapper matching the free-function style used elsewhere.
inline FracKernel build_kernel(double d, std::size_t length) { return FracKernel(d, length); }

}  // namespace fraccouple
