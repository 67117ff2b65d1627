#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gplab/grid.hpp"

namespace gplab {

using cplx = std::complex<double>;

/// Angular wavenumbers of the FFT ordering for the grid (Nyquist entry is +pi/dx).
std::vector<double> wavenumbers(const GridSpec& grid);

/// Forward DFT (unnormalized) and normalized inverse, backed by FFTW.
/// Plans are cached per thread and per size; results are deterministic.
std::vector<cplx> fft_forward(std::span<const cplx> samples);
std::vector<cplx> fft_inverse(std::span<const cplx> spectrum);

// Spectral operators act on twisted-periodic samples, w(x + 2L) = e^{i twist} w(x).
// Such a w equals e^{i kappa (x + L)} times a periodic function, kappa = twist / (2L),
// so every multiplier is evaluated at the shifted wavenumbers k + kappa.
// twist = 0 is the ordinary periodic case.

/// Applies m(k + kappa). `nyquist` overrides the Nyquist entry in the untwisted
/// case (odd operators must vanish there for real data).
std::vector<cplx> apply_multiplier(std::span<const cplx> samples, const GridSpec& grid,
                                   const std::function<cplx(double)>& multiplier,
                                   double twist = 0.0,
                                   std::optional<cplx> nyquist = std::nullopt);

std::vector<cplx> spectral_derivative(std::span<const cplx> samples, const GridSpec& grid,
                                      double twist = 0.0);
std::vector<cplx> spectral_second_derivative(std::span<const cplx> samples,
                                             const GridSpec& grid, double twist = 0.0);

/// Returns samples of w(x - b) for any real b.
std::vector<cplx> spectral_translate(std::span<const cplx> samples, const GridSpec& grid,
                                     double b, double twist = 0.0);

/// Splits twisted samples into the periodic factor (`untwist`) and back (`retwist`).
void untwist(std::span<cplx> samples, double twist);
void retwist(std::span<cplx> samples, double twist);

}  // namespace gplab
