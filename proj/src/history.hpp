#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraccouple::detail {

/// Fixed-length lag window kept contiguous by writing every value twice into
/// a buffer of size 2L. window() is oldest-first: x_{t-L}, ..., x_{t-1}.
class History {
 public:
  History(std::size_t length, double fill) : buf_(2 * length, fill), length_(length) {}

  std::span<const double> window() const noexcept { return {buf_.data() + head_, length_}; }

  void push(double v) noexcept {
    buf_[head_] = v;
    buf_[head_ + length_] = v;
    if (++head_ == length_) head_ = 0;
  }

 private:
  std::vector<double> buf_;
  std::size_t length_;
  std::size_t head_ = 0;
};

inline constexpr std::size_t kDotLanes = 32;

/// Dot product with kDotLanes independent partial sums combined by a fixed
/// pairwise tree. The summation order depends only on the length, so the
/// result is the same whether the compiler emits SSE2, AVX2 or AVX-512 code
/// (given no floating-point contraction).
inline double blocked_dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double s[kDotLanes] = {};
  std::size_t i = 0;
  for (; i + kDotLanes <= n; i += kDotLanes) {
    for (std::size_t k = 0; k < kDotLanes; ++k) s[k] += pa[i + k] * pb[i + k];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += pa[i] * pb[i];
  for (std::size_t width = kDotLanes / 2; width > 0; width /= 2) {
    for (std::size_t k = 0; k < width; ++k) s[k] += s[k + width];
  }
  return s[0] + tail;
}

}  // namespace fraccouple::detail
