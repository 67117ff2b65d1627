#include "gplab/winding.hpp"

#include <cmath>
#include <stdexcept>

namespace gplab {
namespace {

// Tent of height 1/2 on [0, 1], zero on [1, 2].
double amplitude_tent(double u) {
  if (u <= 0.5) return u;
  if (u <= 1.0) return 1.0 - u;
  return 0.0;
}

// Tent of height 1 on [0, 2].
double phase_tent(double u) { return u <= 1.0 ? u : 2.0 - u; }

}  // namespace

WindingMap winding_insert(double q, double mu, std::size_t resolution) {
  if (q == 0.0 || !(std::abs(q) <= 1.0 / 32.0)) {
    throw std::domain_error("winding insertion requires 0 < |q| <= 1/32");
  }
  if (!(mu >= 0.0 && mu <= 0.25)) throw std::domain_error("winding insertion requires 0 <= mu <= 1/4");
  if (resolution < 8) throw std::domain_error("winding insertion needs at least 8 intervals");

  WindingMap out;
  out.lambda = 1.0 / (8.0 * std::abs(q));
  out.ell = 2.0 * out.lambda;
  out.delta = std::min(mu * mu, 1.0 / out.lambda);
  out.spacing = out.ell / static_cast<double>(resolution);
  const double orientation = q > 0.0 ? -1.0 : 1.0;

  out.samples.resize(resolution + 1);
  for (std::size_t j = 0; j <= resolution; ++j) {
    // u = s / lambda runs over [0, 2] and hits both endpoints exactly.
    const double u = 2.0 * static_cast<double>(j) / static_cast<double>(resolution);
    const double f = amplitude_tent(u) / out.lambda;
    const double rho = std::sqrt(1.0 - out.delta - f);
    out.samples[j] = std::polar(rho, orientation * phase_tent(u));
  }
  out.momentum = discrete_winding_momentum(out.samples, out.spacing);
  out.energy = discrete_open_energy(out.samples, out.spacing);
  return out;
}

double discrete_winding_momentum(std::span<const cplx> samples,
                                 [[maybe_unused]] double spacing) {
  // h <i (a + b) / 2, (b - a) / h> = -Im(a conj(b)); the spacing cancels.
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    sum += -std::imag(samples[j] * std::conj(samples[j + 1]));
  }
  return 0.5 * sum;
}

double discrete_open_energy(std::span<const cplx> samples, double spacing) {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const double da = 1.0 - std::norm(samples[j]);
    const double db = 1.0 - std::norm(samples[j + 1]);
    sum += std::norm(samples[j + 1] - samples[j]) / (2.0 * spacing) +
           spacing * 0.125 * (da * da + db * db);
  }
  return sum;
}

}  // namespace gplab
