#include "fraccouple/surrogate.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "fraccouple/errors.hpp"

namespace fraccouple {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {
    if (plan_ == nullptr) throw std::runtime_error("fftw: planning failed");
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void require_length(std::size_t n) {
  if (n < 4) throw ParameterError("surrogate: series length must be >= 4, got " + std::to_string(n));
}

}  // namespace

std::string_view to_string(SurrogateMode m) noexcept {
  return m == SurrogateMode::independent ? "independent" : "shared_shuffle";
}

SurrogateMode parse_surrogate_mode(std::string_view name) {
  if (name == "independent") return SurrogateMode::independent;
  if (name == "shared_shuffle") return SurrogateMode::shared_shuffle;
  throw ParameterError("unknown surrogate mode '" + std::string(name) + "' (expected independent, shared_shuffle)");
}

std::vector<std::complex<double>> real_spectrum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw ParameterError("real_spectrum: empty series");
  const std::size_t h = n / 2 + 1;
  auto in = fftw_buffer<double>(n);
  auto out = fftw_buffer<fftw_complex>(h);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  plan->execute();
  std::vector<std::complex<double>> spec(h);
  for (std::size_t k = 0; k < h; ++k) spec[k] = {out[k][0], out[k][1]};
  return spec;
}

std::vector<double> inverse_real_spectrum(std::span<const std::complex<double>> half, std::size_t n) {
  const std::size_t h = n / 2 + 1;
  if (n == 0 || half.size() != h) throw ParameterError("inverse_real_spectrum: half spectrum must have N/2+1 bins");
  auto in = fftw_buffer<fftw_complex>(h);
  auto out = fftw_buffer<double>(n);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  for (std::size_t k = 0; k < h; ++k) {
    in[k][0] = half[k].real();
    in[k][1] = half[k].imag();
  }
  in[0][1] = 0.0;
  if (n % 2 == 0) in[h - 1][1] = 0.0;
  plan->execute();  // c2r overwrites its input
  std::vector<double> x(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = out[i] * scale;
  return x;
}

std::vector<std::complex<double>> rotate_phases(std::span<const std::complex<double>> half, std::size_t n,
                                                GaussianStream& rng) {
  require_length(n);
  if (half.size() != n / 2 + 1) throw ParameterError("rotate_phases: half spectrum must have N/2+1 bins");
  std::vector<std::complex<double>> out(half.begin(), half.end());
  const std::size_t last_free = (n % 2 == 0) ? n / 2 - 1 : n / 2;
  for (std::size_t k = 1; k <= last_free; ++k) {
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    out[k] *= std::complex<double>(std::cos(phi), std::sin(phi));
  }
  if (n % 2 == 0) {
    // Self-conjugate bin: phase restricted to {0, π}.
    if (rng.uniform() < 0.5) out[n / 2] = -out[n / 2];
  }
  return out;
}

std::vector<double> phase_randomize(std::span<const double> x, std::uint64_t seed) {
  require_length(x.size());
  GaussianStream rng(seed, kStreamX);
  return inverse_real_spectrum(rotate_phases(real_spectrum(x), x.size(), rng), x.size());
}

SeriesPair surrogate_pair(const SeriesPair& pair, const SurrogateSpec& spec, std::size_t index) {
  require_length(pair.x.size());
  if (pair.has_y() && pair.y.size() != pair.x.size()) throw ParameterError("surrogate_pair: component lengths differ");
  const std::uint64_t seed = derive_seed(spec.seed, {index});
  SeriesPair out;
  out.params = pair.params;
  out.tail_mass_x = pair.tail_mass_x;
  out.tail_mass_y = pair.tail_mass_y;
  out.surrogate = true;
  const std::size_t n = pair.x.size();
  {
    GaussianStream rng(seed, kStreamX);
    out.x = inverse_real_spectrum(rotate_phases(real_spectrum(pair.x), n, rng), n);
  }
  if (pair.has_y()) {
    GaussianStream rng(seed, spec.mode == SurrogateMode::independent ? kStreamY : kStreamX);
    out.y = inverse_real_spectrum(rotate_phases(real_spectrum(pair.y), n, rng), n);
  }
  return out;
}

std::vector<SeriesPair> surrogate_ensemble(const SeriesPair& pair, const SurrogateSpec& spec) {
  if (spec.n_surrogates < 1) throw ParameterError("surrogate: n_surrogates must be >= 1");
  std::vector<SeriesPair> out;
  out.reserve(spec.n_surrogates);
  for (std::size_t i = 0; i < spec.n_surrogates; ++i) out.push_back(surrogate_pair(pair, spec, i));
  return out;
}

}  // namespace fraccouple
