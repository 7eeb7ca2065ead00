#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fraccouple {

/// SplitMix64 finalizer. Bijective 64-bit mix used for every seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a master seed and a list of indices into one 64-bit seed:
/// h = splitmix64(master); for each k: h = splitmix64(h ^ splitmix64(k)).
/// Stable across releases; experiment run seeds and stream seeds use it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// Reproducible N(0,1) stream.
///
/// Bits come from std::mt19937_64 (whose output sequence is fixed by the C++
/// standard) seeded with derive_seed(seed, {stream}). Uniforms are
/// u = (bits >> 11 + 0.5) * 2^-53, strictly inside (0, 1). Normals use the
/// basic Box-Muller transform r = sqrt(-2 ln u1), returning r cos(2π u2)
/// then r sin(2π u2). Sub-streams with different indices are independent
/// for all practical purposes.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream);

  double uniform() noexcept;
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream indices used by the generators.
inline constexpr std::uint64_t kStreamX = 0;
inline constexpr std::uint64_t kStreamY = 1;

}  // namespace fraccouple
