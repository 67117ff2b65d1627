#pragma once

#include <complex>
#include <utility>

namespace gplab {

using cplx = std::complex<double>;

/// Speed of sound of the linearization around |v| = 1.
inline constexpr double kSoundSpeed = 1.41421356237309504880;

/// A member e^{i theta} u_c(x - a) of the traveling-wave family.
///
/// `speed` must satisfy |speed| <= kSoundSpeed; the sonic value describes the
/// constant map e^{i theta} * i * sign(speed).
struct SolitonParams {
  double speed = 0.0;
  double shift = 0.0;
  double phase = 0.0;
};

struct SolitonClosedForms {
  double energy = 0.0;
  double momentum = 0.0;
  double momentum_derivative = 0.0;
  double mass = 0.0;
  std::pair<cplx, cplx> limits;  // (x -> -inf, x -> +inf)
};

/// e^{i theta} u_c(x - a) with
/// u_c(x) = sqrt((2 - c^2)/2) tanh(sqrt(2 - c^2) x / 2) + i c / sqrt(2).
/// Throws std::domain_error for supersonic speeds.
cplx eval_soliton(const SolitonParams& params, double x);
cplx eval_soliton_derivative(const SolitonParams& params, double x);
cplx eval_soliton_second_derivative(const SolitonParams& params, double x);

/// Ginzburg-Landau energy of u_c: (2 - c^2)^{3/2} / 3.
double soliton_energy(double c);

/// Renormalized momentum of u_c for 0 < c <= sqrt(2):
/// pi/2 - atan(c / sqrt(2 - c^2)) - (c/2) sqrt(2 - c^2).
/// The c -> 0+ limit is pi/2 and is returned by `soliton_momentum_limit_at_rest`.
double soliton_momentum(double c);
double soliton_momentum_limit_at_rest();

/// dp/dc = -sqrt(2 - c^2).
double soliton_momentum_derivative(double c);

/// Inverse of soliton_momentum on [0, pi/2): safeguarded Newton on [0, sqrt(2)].
double speed_from_momentum(double p);

/// m(u_c) = (1/2) int (|u_c|^2 - 1) = -sqrt(2 - c^2).
double soliton_mass(double c);

/// Untwisted momentum of any family member, reduced to (-pi/2, pi/2].
/// Valid for every |c| <= sqrt(2), including the kink (pi/2) and negative speeds.
double soliton_untwisted_momentum(double c);

SolitonClosedForms soliton_closed_forms(double c);

/// Reduce an angle to its representative of R / pi Z in (-pi/2, pi/2].
double canonical_mod_pi(double value);

/// Distance in R / pi Z.
double distance_mod_pi(double a, double b);

}  // namespace gplab
