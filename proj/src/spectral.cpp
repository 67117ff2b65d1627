#include "gplab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace gplab {
namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    buffer_ = fftw_alloc_complex(n);
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::vector<cplx> run(std::span<const cplx> in, bool forward) {
    static_assert(sizeof(cplx) == sizeof(fftw_complex));
    std::memcpy(buffer_, in.data(), n_ * sizeof(cplx));
    fftw_execute(forward ? forward_ : backward_);
    std::vector<cplx> out(n_);
    std::memcpy(static_cast<void*>(out.data()), buffer_, n_ * sizeof(cplx));
    if (!forward) {
      const double scale = 1.0 / static_cast<double>(n_);
      for (auto& z : out) z *= scale;
    }
    return out;
  }

 private:
  std::size_t n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

FftPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace

std::vector<double> wavenumbers(const GridSpec& grid) {
  const std::size_t n = grid.n_points;
  const double base = std::numbers::pi / grid.half_length;  // 2 pi / (2 L)
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto m = (j <= n / 2) ? static_cast<double>(j)
                                : static_cast<double>(j) - static_cast<double>(n);
    k[j] = base * m;
  }
  return k;
}

std::vector<cplx> fft_forward(std::span<const cplx> samples) {
  return plan_for(samples.size()).run(samples, true);
}

std::vector<cplx> fft_inverse(std::span<const cplx> spectrum) {
  return plan_for(spectrum.size()).run(spectrum, false);
}

void untwist(std::span<cplx> samples, double twist) {
  if (twist == 0.0) return;
  const double n = static_cast<double>(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] *= std::polar(1.0, -twist * static_cast<double>(j) / n);
  }
}

void retwist(std::span<cplx> samples, double twist) {
  if (twist == 0.0) return;
  const double n = static_cast<double>(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] *= std::polar(1.0, twist * static_cast<double>(j) / n);
  }
}

std::vector<cplx> apply_multiplier(std::span<const cplx> samples, const GridSpec& grid,
                                   const std::function<cplx(double)>& multiplier,
                                   double twist, std::optional<cplx> nyquist) {
  if (samples.size() != grid.n_points) {
    throw std::invalid_argument("sample count does not match grid");
  }
  std::vector<cplx> work(samples.begin(), samples.end());
  untwist(work, twist);
  auto spectrum = fft_forward(work);
  const auto k = wavenumbers(grid);
  const double kappa = twist / (2.0 * grid.half_length);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const bool is_nyquist = (j == grid.n_points / 2) && twist == 0.0;
    spectrum[j] *= (is_nyquist && nyquist) ? *nyquist : multiplier(k[j] + kappa);
  }
  auto out = fft_inverse(spectrum);
  retwist(out, twist);
  return out;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples, const GridSpec& grid,
                                      double twist) {
  return apply_multiplier(
      samples, grid, [](double k) { return cplx(0.0, k); }, twist, cplx(0.0));
}

std::vector<cplx> spectral_second_derivative(std::span<const cplx> samples,
                                             const GridSpec& grid, double twist) {
  return apply_multiplier(samples, grid, [](double k) { return cplx(-k * k); }, twist);
}

std::vector<cplx> spectral_translate(std::span<const cplx> samples, const GridSpec& grid,
                                     double b, double twist) {
  const double k_nyquist = std::numbers::pi / grid.dx();
  return apply_multiplier(
      samples, grid, [b](double k) { return std::polar(1.0, -k * b); }, twist,
      cplx(std::cos(k_nyquist * b)));
}

}  // namespace gplab
