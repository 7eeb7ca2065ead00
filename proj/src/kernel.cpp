#include "fraccouple/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fraccouple/errors.hpp"

namespace fraccouple {

FracKernel::FracKernel(double d, std::size_t length) : d_(d) {
  if (!(d > -0.5 && d < 0.5)) {
    throw ParameterError("kernel: d must lie in (-0.5, 0.5), got " + std::to_string(d));
  }
  if (length == 0) throw ParameterError("kernel: truncation length must be >= 1");

  weights_.resize(length);
  double a = d;
  weights_[0] = a;
  for (std::size_t n = 1; n < length; ++n) {
    const double nd = static_cast<double>(n);
    a *= (nd - d) / (nd + 1.0);
    weights_[n] = a;
  }

  // Summed smallest-first; the tail is tiny next to a_1.
  double sum = 0.0;
  for (auto it = weights_.rbegin(); it != weights_.rend(); ++it) sum += *it;
  tail_mass_ = 1.0 - sum;
  rebuild_reversed();
}

void FracKernel::rebuild_reversed() { reversed_.assign(weights_.rbegin(), weights_.rend()); }

double FracKernel::weight_at(std::size_t n) const {
  if (n < 1 || n > weights_.size()) {
    throw IndexError("kernel: lag " + std::to_string(n) + " outside [1, " +
                     std::to_string(weights_.size()) + "]");
  }
  return weights_[n - 1];
}

FracKernel FracKernel::renormalized() const {
  const double mass = 1.0 - tail_mass_;
  if (!(mass > 0.0)) throw ParameterError("kernel: cannot renormalize weights with non-positive mass");
  FracKernel out;
  out.d_ = d_;
  out.weights_ = weights_;
  for (double& w : out.weights_) w /= mass;
  double sum = 0.0;
  for (auto it = out.weights_.rbegin(); it != out.weights_.rend(); ++it) sum += *it;
  out.tail_mass_ = 1.0 - sum;
  out.rebuild_reversed();
  return out;
}

}  // namespace fraccouple
