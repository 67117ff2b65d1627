#pragma once

#include "gplab/field.hpp"

namespace gplab {

/// Best orbit member e^{i theta} kink(. ) for v(. + a).
struct ModulationFit {
  double a = 0.0;
  double theta = 0.0;     ///< in (-pi, pi]
  double residual = 0.0;  ///< d_A(v(. + a), e^{i theta} kink)
};

/// For a fixed shift a the phase is theta*(a) = arg int_{|x|<=A} v(x + a) conj(kink(x)) dx.
/// Shifts are scanned with step 4 dx over [-L/2, L/2], then the best one is
/// refined by golden-section search to dx / 100.
/// Throws std::domain_error when the correlation vanishes (window too small).
ModulationFit fit_modulation(const Field& f, double A);

/// Residual and phase for one fixed shift; exposed for tests.
ModulationFit modulation_at(const Field& f, double A, double a);

}  // namespace gplab
