#include "gplab/profiles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gplab {
namespace {

constexpr double kPi = std::numbers::pi;

void require_subsonic(double c) {
  if (!(std::abs(c) <= kSoundSpeed)) {
    throw std::domain_error(
        "speed " + std::to_string(c) +
        " exceeds sqrt(2): no sonic or supersonic non-constant traveling waves");
  }
}

// sqrt(2 - c^2), clamped so that the sonic endpoint gives exactly zero.
double gap(double c) { return std::sqrt(std::max(0.0, 2.0 - c * c)); }

// Real-valued momentum formula, valid for |c| <= sqrt(2) (no reduction).
double momentum_formula(double c) {
  const double s = gap(c);
  if (c > 0.0) return std::atan2(s, c) - 0.5 * c * s;
  return 0.5 * kPi - std::atan2(c, s) - 0.5 * c * s;
}

}  // namespace

cplx eval_soliton(const SolitonParams& params, double x) {
  require_subsonic(params.speed);
  const double s = gap(params.speed);
  const double y = x - params.shift;
  const cplx u(s / std::numbers::sqrt2 * std::tanh(0.5 * s * y),
               params.speed / std::numbers::sqrt2);
  return std::polar(1.0, params.phase) * u;
}

cplx eval_soliton_derivative(const SolitonParams& params, double x) {
  require_subsonic(params.speed);
  const double s = gap(params.speed);
  const double sech = 1.0 / std::cosh(0.5 * s * (x - params.shift));
  // d/dx [A tanh(B y)] = A B sech^2, A = s/sqrt2, B = s/2
  return std::polar(1.0, params.phase) * (s * s / (2.0 * std::numbers::sqrt2) * sech * sech);
}

cplx eval_soliton_second_derivative(const SolitonParams& params, double x) {
  require_subsonic(params.speed);
  const double s = gap(params.speed);
  const double z = 0.5 * s * (x - params.shift);
  const double sech = 1.0 / std::cosh(z);
  const double amp = s * s / (2.0 * std::numbers::sqrt2);
  return std::polar(1.0, params.phase) * (-amp * s * sech * sech * std::tanh(z));
}

double soliton_energy(double c) {
  require_subsonic(c);
  const double s = gap(c);
  return s * s * s / 3.0;
}

double soliton_momentum(double c) {
  if (!(c > 0.0)) throw std::domain_error("soliton_momentum requires c > 0");
  require_subsonic(c);
  return momentum_formula(c);
}

double soliton_momentum_limit_at_rest() { return 0.5 * kPi; }

double soliton_momentum_derivative(double c) {
  require_subsonic(c);
  return -gap(c);
}

double speed_from_momentum(double p) {
  if (!(p >= 0.0 && p < 0.5 * kPi)) {
    throw std::domain_error("speed_from_momentum requires 0 <= p < pi/2");
  }
  if (p == 0.0) return kSoundSpeed;

  // momentum_formula is decreasing: f(c) = p(c) - target changes sign on [lo, hi].
  double lo = 0.0;
  double hi = kSoundSpeed;
  double c = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = momentum_formula(c) - p;
    if (std::abs(f) <= 1e-15) break;
    if (f > 0.0) {
      lo = c;
    } else {
      hi = c;
    }
    const double df = -gap(c);
    double next = (df != 0.0) ? c - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-16) {
      c = next;
      break;
    }
    c = next;
  }
  return c;
}

double soliton_mass(double c) {
  require_subsonic(c);
  return -gap(c);
}

double soliton_untwisted_momentum(double c) {
  require_subsonic(c);
  return canonical_mod_pi(momentum_formula(c));
}

SolitonClosedForms soliton_closed_forms(double c) {
  require_subsonic(c);
  SolitonClosedForms out;
  out.energy = soliton_energy(c);
  out.momentum = momentum_formula(c);
  out.momentum_derivative = -gap(c);
  out.mass = -gap(c);
  const double re = gap(c) / std::numbers::sqrt2;
  const double im = c / std::numbers::sqrt2;
  out.limits = {cplx(-re, im), cplx(re, im)};
  return out;
}

double canonical_mod_pi(double value) {
  double r = value - kPi * std::ceil((value - 0.5 * kPi) / kPi);
  // ceil may land on the excluded endpoint through rounding.
  if (r <= -0.5 * kPi) r += kPi;
  return r;
}

double distance_mod_pi(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

}  // namespace gplab
