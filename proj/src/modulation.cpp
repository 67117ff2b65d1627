#include "gplab/modulation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gplab/functionals.hpp"

namespace gplab {

namespace {

// Empty when the correlation over the window vanishes.
std::optional<ModulationFit> try_modulation_at(const Field& f, double A, double a) {
  const GridSpec& grid = f.grid();
  if (!(A > 0.0) || A > grid.half_length) throw std::invalid_argument("window A must satisfy 0 < A <= L");
  const Field shifted = f.translated(-a);  // v(x + a)
  const auto v = shifted.values();
  const auto dv = shifted.derivative();

  cplx correlation(0.0);
  double weight = 0.0;
  std::vector<cplx> kink(grid.n_points);
  std::vector<cplx> dkink(grid.n_points);
  const SolitonParams rest{};
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    kink[j] = eval_soliton(rest, x);
    dkink[j] = eval_soliton_derivative(rest, x);
    if (std::abs(x) <= A) {
      correlation += v[j] * std::conj(kink[j]);
      weight += std::abs(v[j]) * std::abs(kink[j]);
    }
  }
  if (!(std::abs(correlation) > 1e-12 * std::max(weight, 1e-300))) return std::nullopt;
  const double theta = std::arg(correlation);
  const cplx rotation = std::polar(1.0, theta);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    kink[j] *= rotation;
    dkink[j] *= rotation;
  }
  return ModulationFit{a, theta, distance_dA_samples(grid, v, dv, kink, dkink, A)};
}

[[noreturn]] void degenerate() {
  throw std::domain_error("modulation phase undefined: the correlation over the window A vanishes; "
                          "the window A is too small");
}

// Degenerate shifts rank last.
ModulationFit scored(const Field& f, double A, double a) {
  if (auto fit = try_modulation_at(f, A, a)) return *fit;
  return ModulationFit{a, 0.0, std::numeric_limits<double>::infinity()};
}

}  // namespace

ModulationFit modulation_at(const Field& f, double A, double a) {
  if (auto fit = try_modulation_at(f, A, a)) return *fit;
  degenerate();
}

ModulationFit fit_modulation(const Field& f, double A) {
  const GridSpec& grid = f.grid();
  const double step = 4.0 * grid.dx();
  const double half_range = 0.5 * grid.half_length;
  const auto count = static_cast<long>(std::floor(2.0 * half_range / step + 1e-9));

  ModulationFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (long m = 0; m <= count; ++m) {
    const auto fit = scored(f, A, -half_range + static_cast<double>(m) * step);
    if (fit.residual < best.residual) best = fit;
  }

  // Golden-section search on [a* - step, a* + step].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (!std::isfinite(best.residual)) degenerate();
  double lo = best.a - step;
  double hi = best.a + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  auto f1 = scored(f, A, x1);
  auto f2 = scored(f, A, x2);
  const double tol = grid.dx() / 100.0;
  while (hi - lo > tol) {
    if (f1.residual <= f2.residual) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = scored(f, A, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = scored(f, A, x2);
    }
  }
  for (const auto& candidate : {f1, f2, scored(f, A, 0.5 * (lo + hi))}) {
    if (candidate.residual < best.residual) best = candidate;
  }
  return best;
}

}  // namespace gplab
