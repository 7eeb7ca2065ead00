#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fraccouple/generators.hpp"

namespace fraccouple {

enum class SurrogateMode {
  /// x and y get independent phase draws (destroys cross-correlation).
  independent,
  /// x and y are rotated by the same phases (keeps cross-correlation).
  shared_shuffle,
};

std::string_view to_string(SurrogateMode m) noexcept;
SurrogateMode parse_surrogate_mode(std::string_view name);

struct SurrogateSpec {
  SurrogateMode mode = SurrogateMode::independent;
  std::uint64_t seed = 0;
  std::size_t n_surrogates = 1;
};

/// Non-redundant half spectrum X_0..X_{N/2} of a real series (unnormalized
/// forward DFT, X_k = sum_t x_t e^{-2πi kt/N}).
std::vector<std::complex<double>> real_spectrum(std::span<const double> x);

/// Inverse of real_spectrum for a series of length n (divides by n). The
/// imaginary parts of the self-conjugate bins are ignored.
std::vector<double> inverse_real_spectrum(std::span<const std::complex<double>> half, std::size_t n);

/// Rotates every bin 1 <= k < N/2 (k <= (N-1)/2 for odd N) by e^{iφ_k} with
/// φ_k ~ U[0, 2π) from `rng`; the Nyquist bin of an even-length series gets
/// a random sign; bin 0 is untouched. Negative frequencies are implied by
/// conjugate symmetry, so the inverse is exactly real.
std::vector<std::complex<double>> rotate_phases(std::span<const std::complex<double>> half, std::size_t n,
                                                GaussianStream& rng);

/// Phase-randomized surrogate of x with phases drawn from stream kStreamX
/// of `seed`. Throws ParameterError for N < 4.
std::vector<double> phase_randomize(std::span<const double> x, std::uint64_t seed);

/// Surrogate of both components. Surrogate number `index` in independent
/// mode uses seed derive_seed(spec.seed, {index}) with stream kStreamX for x
/// and kStreamY for y; shared_shuffle uses kStreamX for both.
SeriesPair surrogate_pair(const SeriesPair& pair, const SurrogateSpec& spec, std::size_t index = 0);

/// spec.n_surrogates surrogates, index 0..n-1.
std::vector<SeriesPair> surrogate_ensemble(const SeriesPair& pair, const SurrogateSpec& spec);

}  // namespace fraccouple
