#include "fraccouple/rng.hpp"

#include <cmath>
#include <numbers>

namespace fraccouple {

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(derive_seed(seed, {stream})) {}

double GaussianStream::uniform() noexcept {
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double GaussianStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace fraccouple
