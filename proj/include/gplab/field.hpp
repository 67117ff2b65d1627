#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "gplab/grid.hpp"
#include "gplab/profiles.hpp"

namespace gplab {

/// Constant background of modulus one.
struct ConstantBackground {
  cplx value{1.0, 0.0};
  bool operator==(const ConstantBackground&) const = default;
};

/// Analytically known part V0 of a map v = V0 + w.
using Background = std::variant<ConstantBackground, SolitonParams>;

cplx background_value(const Background& bg, double x);
cplx background_derivative(const Background& bg, double x);
cplx background_second_derivative(const Background& bg, double x);

/// Energy and mass of V0 on the complement of [-L, L), in closed form.
double background_tail_energy(const Background& bg, double half_length);
double background_tail_mass(const Background& bg, double half_length);

/// [p](V0) reduced to (-pi/2, pi/2], and a real lift of it.
double background_untwisted_momentum(const Background& bg);
double background_momentum_lift(const Background& bg);

/// Phase ratio arg(V0(+inf) / V0(-inf)) in (-pi, pi]; the perturbation is
/// twisted-periodic with this twist so that V0 + w closes up on the circle.
double background_twist(const Background& bg);

/// Background translated by b: V0(x - b).
Background translate_background(const Background& bg, double b);
/// Background multiplied by e^{i alpha}.
Background rotate_background(const Background& bg, double alpha);

/// Energy-space map on a truncated line, stored as analytic background plus
/// sampled perturbation. The perturbation is twisted-periodic on the grid,
/// w(x + 2L) = e^{i twist} w(x), and is required to have decayed at the two
/// end nodes.
class Field {
 public:
  Field(GridSpec grid, Background background, std::vector<cplx> perturbation);

  static Field from_background(GridSpec grid, Background background);

  const GridSpec& grid() const { return grid_; }
  const Background& background() const { return background_; }
  std::span<const cplx> perturbation() const { return perturbation_; }
  double twist() const { return background_twist(background_); }

  /// |w| at both end nodes <= 1e-8 * max(1, max|w|).
  bool is_valid() const;
  /// Throws std::invalid_argument when `is_valid()` fails.
  void require_valid() const;

  std::vector<cplx> background_samples() const;
  std::vector<cplx> values() const;
  std::vector<cplx> derivative() const;
  std::vector<cplx> second_derivative() const;

  Field with_perturbation(std::vector<cplx> perturbation) const;
  /// v(. - b); the background moves analytically, the perturbation spectrally.
  Field translated(double b) const;
  /// e^{i alpha} v.
  Field rotated(double alpha) const;

 private:
  GridSpec grid_;
  Background background_;
  std::vector<cplx> perturbation_;
};

}  // namespace gplab
