#include "gplab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gplab/spectral.hpp"

namespace gplab {
namespace {

constexpr cplx kI(0.0, 1.0);

}  // namespace

std::vector<double> energy_density(const Field& f) {
  const auto v = f.values();
  const auto dv = f.derivative();
  std::vector<double> e(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double defect = 1.0 - std::norm(v[j]);
    e[j] = 0.5 * std::norm(dv[j]) + 0.25 * defect * defect;
  }
  return e;
}

double energy(const Field& f, DecayCheck check) {
  if (check == DecayCheck::kEnforce) f.require_valid();
  const auto e = energy_density(f);
  double sum = 0.0;
  for (double x : e) sum += x;
  return sum * f.grid().dx() + background_tail_energy(f.background(), f.grid().half_length);
}

double mass(const Field& f, DecayCheck check) {
  if (check == DecayCheck::kEnforce) f.require_valid();
  const auto v = f.values();
  double sum = 0.0;
  for (const auto& z : v) sum += 0.5 * (std::norm(z) - 1.0);
  return sum * f.grid().dx() + background_tail_mass(f.background(), f.grid().half_length);
}

MomentumValue untwisted_momentum(const Field& f, DecayCheck check) {
  if (check == DecayCheck::kEnforce) f.require_valid();
  const auto w = f.perturbation();
  const auto dw = spectral_derivative(w, f.grid(), f.twist());
  const auto& grid = f.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const cplx iw = kI * w[j];
    sum += 0.5 * dot(iw, dw[j]) + dot(iw, background_derivative(f.background(), grid.x(j)));
  }
  MomentumValue out;
  out.relative_P = sum * grid.dx();
  out.lifted = background_momentum_lift(f.background()) + out.relative_P;
  out.untwisted = canonical_mod_pi(out.lifted);
  return out;
}

double renormalized_momentum(const Field& f) {
  f.require_valid();
  const auto v = f.values();
  const auto dv = f.derivative();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double rho2 = std::norm(v[j]);
    if (rho2 == 0.0) throw std::domain_error("renormalized momentum needs a non-vanishing map");
    const double phase_gradient = dot(kI * v[j], dv[j]) / rho2;
    sum += 0.5 * (rho2 - 1.0) * phase_gradient;
  }
  return sum * f.grid().dx();
}

double pointwise_momentum_bound_excess(const Field& f) {
  const auto v = f.values();
  const auto dv = f.derivative();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double rho2 = std::norm(v[j]);
    if (rho2 == 0.0) throw std::domain_error("pointwise bound needs a non-vanishing map");
    const double rho = std::sqrt(rho2);
    const double phase_gradient = dot(kI * v[j], dv[j]) / rho2;
    const double defect = 1.0 - rho2;
    const double e = 0.5 * std::norm(dv[j]) + 0.25 * defect * defect;
    worst = std::max(worst, std::abs(defect * phase_gradient) - std::sqrt(2.0) * e / rho);
  }
  return worst;
}

double min_modulus_bound_excess(const Field& f) {
  const auto v = f.values();
  double min_modulus = std::numeric_limits<double>::infinity();
  for (const auto& z : v) min_modulus = std::min(min_modulus, std::abs(z));
  if (min_modulus == 0.0) throw std::domain_error("bound needs a non-vanishing map");
  const double p = std::abs(renormalized_momentum(f));
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  return min_modulus - energy(f) / (std::sqrt(2.0) * p);
}

double distance_dA_samples(const GridSpec& grid, std::span<const cplx> u,
                           std::span<const cplx> du, std::span<const cplx> v,
                           std::span<const cplx> dv, double window) {
  if (!(window > 0.0) || window > grid.half_length) {
    throw std::invalid_argument("distance window A must satisfy 0 < A <= L");
  }
  double sup = 0.0;
  double derivative_sq = 0.0;
  double modulus_sq = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    if (std::abs(grid.x(j)) <= window) sup = std::max(sup, std::abs(u[j] - v[j]));
    derivative_sq += std::norm(du[j] - dv[j]);
    const double dm = std::abs(u[j]) - std::abs(v[j]);
    modulus_sq += dm * dm;
  }
  return sup + std::sqrt(derivative_sq * grid.dx()) + std::sqrt(modulus_sq * grid.dx());
}

double distance_dA(const Field& u, const Field& v, double window) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("fields live on different grids");
  const auto uv = u.values();
  const auto vv = v.values();
  const auto du = u.derivative();
  const auto dv = v.derivative();
  return distance_dA_samples(u.grid(), uv, du, vv, dv, window);
}

DipReport locate_dips(const Field& f, double delta0, double energy_bound) {
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw std::invalid_argument("delta0 must lie in (0, 1)");
  if (!(energy_bound > 0.0)) throw std::invalid_argument("energy bound must be positive");
  const double e = energy(f);
  if (e > energy_bound * (1.0 + 1e-12)) {
    throw std::invalid_argument("field energy exceeds the supplied bound");
  }

  DipReport report;
  report.r0 = std::min(delta0 * delta0 / (8.0 * energy_bound), 0.5);
  report.mu0 = report.r0 * delta0 * delta0 / 8.0;
  report.ell0 = 2.0 * energy_bound / report.mu0;
  report.cluster_bound = static_cast<std::size_t>(std::ceil(report.ell0));

  const auto v = f.values();
  const auto& grid = f.grid();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (std::abs(1.0 - std::abs(v[j])) >= delta0) report.points.push_back(grid.x(j));
  }
  for (double x : report.points) {
    if (report.clusters.empty() || x - report.clusters.back().points.back() >= 2.0) {
      report.clusters.push_back(DipCluster{x - 1.0, x + 1.0, {x}});
    } else {
      report.clusters.back().points.push_back(x);
      report.clusters.back().right = x + 1.0;
    }
  }
  return report;
}

}  // namespace gplab
