#include "gplab/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gplab/functionals.hpp"

namespace gplab {

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void PerturbationSpec::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be a finite nonnegative number");
  }
  if (!(A > 0.0)) throw std::invalid_argument("window A must be positive");
  if (n_bumps == 0) throw std::invalid_argument("n_bumps must be positive");
  const auto [lo, hi] = bump_width_range;
  if (!(lo > 0.0 && hi >= lo)) throw std::invalid_argument("bump widths must satisfy 0 < lo <= hi");
}

std::vector<cplx> seeded_bumps(const PerturbationSpec& spec, const GridSpec& grid) {
  spec.validate();
  SeededRng rng(spec.seed);
  std::vector<cplx> w(grid.n_points, cplx(0.0));
  for (std::size_t b = 0; b < spec.n_bumps; ++b) {
    const double center = rng.uniform(-0.5 * spec.A, 0.5 * spec.A);
    const double width = rng.uniform(spec.bump_width_range.first, spec.bump_width_range.second);
    const double re = rng.normal();
    const cplx amplitude(re, rng.normal());
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      const double y = (grid.x(j) - center) / width;
      w[j] += amplitude * std::exp(-0.5 * y * y);
    }
  }
  return w;
}

Field make_perturbed_kink(const PerturbationSpec& spec, const GridSpec& grid) {
  spec.validate();
  if (spec.A > grid.half_length) throw std::invalid_argument("window A exceeds the domain");
  const Field kink = Field::from_background(grid, SolitonParams{});
  if (spec.epsilon == 0.0) return kink;

  const auto bumps = seeded_bumps(spec, grid);
  const auto scaled = [&](double s) {
    std::vector<cplx> w(bumps);
    for (auto& z : w) z *= s;
    return kink.with_perturbation(std::move(w));
  };
  const auto gap = [&](double s) { return distance_dA(scaled(s), kink, spec.A) - spec.epsilon; };

  // d_A grows from 0 at s = 0; bracket the root by doubling, then bisect.
  double lo = 0.0;
  double hi = spec.epsilon;
  int doublings = 0;
  while (gap(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) {
      throw std::runtime_error("perturbation cannot reach the requested epsilon with these widths");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  Field out = scaled(0.5 * (lo + hi));
  if (std::abs(distance_dA(out, kink, spec.A) - spec.epsilon) > 1e-4 * spec.epsilon) {
    throw std::runtime_error("perturbation rescaling failed to reach epsilon");
  }
  if (!out.is_valid()) {
    throw std::runtime_error("perturbation has not decayed at the grid ends; enlarge L or narrow the bumps");
  }
  return out;
}

}  // namespace gplab
