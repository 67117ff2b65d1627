#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gplab/functionals.hpp"
#include "gplab/modulation.hpp"
#include "gplab/variational.hpp"
#include "support.hpp"

using namespace gplab;
using gplab::testing::kKinkEnergy;
using gplab::testing::kPi;
using gplab::testing::kSqrt2;

namespace {

const GridSpec kGrid = GridSpec::make(40.0, 1024);

double min_modulus(const Field& f) {
  double m = 1e300;
  for (const auto& z : f.values()) m = std::min(m, std::abs(z));
  return m;
}

// Field equal to `profile` at the nodes, represented over the kink.
template <class F>
Field over_kink(F profile, double phase = 0.0) {
  std::vector<cplx> w(kGrid.n_points);
  for (std::size_t j = 0; j < kGrid.n_points; ++j) {
    const double x = kGrid.x(j);
    w[j] = std::polar(1.0, phase) * (profile(x) - std::tanh(x / kSqrt2));
  }
  return Field(kGrid, SolitonParams{0.0, 0.0, phase}, w);
}

}  // namespace

TEST_CASE("constrained minimizer recovers the traveling wave at p(1)") {
  const double p = soliton_momentum(1.0);
  const auto r = emin_minimize(p, 0.8, kGrid, FlowConfig{});
  REQUIRE(r.converged);
  CHECK(r.energy == doctest::Approx(1.0 / 3.0).epsilon(5e-3));
  CHECK(r.multiplier == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(std::abs(r.momentum - p) <= FlowConfig{}.constraint_tol);
  CHECK(r.residual <= FlowConfig{}.grad_tol);
  CHECK(r.max_energy_increase <= 1e-10);
  // Any minimizer is a traveling wave with speed equal to the multiplier.
  CHECK(traveling_wave_residual(r.field, r.multiplier) <= 10 * FlowConfig{}.grad_tol);
  CHECK(min_modulus(r.field) > 0.1);
}

TEST_CASE("zero momentum relaxes to the constant map") {
  const auto r = emin_minimize(0.0, 0.5, kGrid, FlowConfig{});
  CHECK(r.converged);
  CHECK(r.energy <= 1e-5);
}

TEST_CASE("the minimum does not depend on the initial wave") {
  const double p = 0.6;
  const auto a = emin_minimize(p, speed_from_momentum(0.9), kGrid, FlowConfig{});
  const auto b = emin_minimize(p, speed_from_momentum(0.6), kGrid, FlowConfig{});
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(5e-3));
  CHECK(a.energy == doctest::Approx(soliton_energy(speed_from_momentum(p))).epsilon(5e-3));
}

TEST_CASE("minimization inputs are validated") {
  CHECK_THROWS_AS(emin_minimize(-0.1, 0.5, kGrid, FlowConfig{}), std::domain_error);
  CHECK_THROWS_AS(emin_minimize(kPi / 2, 0.5, kGrid, FlowConfig{}), std::domain_error);
  CHECK_THROWS_AS(emin_minimize(0.5, 0.0, kGrid, FlowConfig{}), std::domain_error);
  CHECK_THROWS_AS(emin_minimize(0.5, 1.5, kGrid, FlowConfig{}), std::domain_error);
  FlowConfig bad;
  bad.step_size = 0.0;
  CHECK_THROWS_AS(emin_minimize(0.5, 0.5, kGrid, bad), std::invalid_argument);
  bad = {};
  bad.grad_tol = 1e-14;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("iteration budget exhaustion is reported, not thrown") {
  FlowConfig cfg;
  cfg.max_iters = 5;
  const auto r = emin_minimize(0.6, 0.3, kGrid, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 5);
  CHECK(std::isfinite(r.energy));
}

TEST_CASE("multiplier equals the slope of the computed curve") {
  const double p = 0.8, h = 0.05;
  const auto mid = emin_minimize(p, speed_from_momentum(p + 0.1), kGrid, FlowConfig{});
  const auto lo = emin_minimize(p - h, speed_from_momentum(p), kGrid, FlowConfig{});
  const auto hi = emin_minimize(p + h, speed_from_momentum(p), kGrid, FlowConfig{});
  REQUIRE(mid.converged);
  const double slope = (hi.energy - lo.energy) / (2 * h);
  CHECK(mid.multiplier == doctest::Approx(slope).epsilon(2e-2));
}

TEST_CASE("energy-momentum curve is sorted, below the sound line and concave") {
  const auto curve = emin_curve({1.2, 0.3, 0.9}, kGrid, FlowConfig{});
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].p == 0.3);
  CHECK(curve[1].p == 0.9);
  CHECK(curve[2].p == 1.2);
  for (const auto& pt : curve) {
    CHECK(pt.converged);
    CHECK(pt.energy < kSqrt2 * pt.p);
    CHECK(pt.energy == doctest::Approx(soliton_energy(speed_from_momentum(pt.p))).epsilon(5e-3));
  }
  const double left = (curve[1].energy - curve[0].energy) / 0.6;
  const double right = (curve[2].energy - curve[1].energy) / 0.3;
  CHECK(right <= left);
  CHECK_THROWS_AS(emin_curve({2.0}, kGrid, FlowConfig{}), std::domain_error);
}

TEST_CASE("pinned flow from the kink itself does not move") {
  const Field kink = Field::from_background(kGrid, SolitonParams{});
  const auto r = pinned_zero_minimize(kGrid, FlowConfig{}, kink);
  CHECK(r.converged);
  CHECK(r.energy == doctest::Approx(kKinkEnergy).epsilon(1e-10));
}

TEST_CASE("pinned flow from a narrow kink relaxes to the kink") {
  const auto r = pinned_zero_minimize(kGrid, FlowConfig{}, over_kink([](double x) { return std::tanh(x); }));
  REQUIRE(r.converged);
  CHECK(r.energy == doctest::Approx(kKinkEnergy).epsilon(5e-3));
  CHECK(r.energy >= kKinkEnergy - 1e-6);
  CHECK(fit_modulation(r.field, 10.0).residual <= 1e-2);
  CHECK(std::abs(r.field.values()[kGrid.center_index()]) == 0.0);
}

TEST_CASE("pinned flow from a rotated wide kink lands on the rotated orbit") {
  const auto r = pinned_zero_minimize(
      kGrid, FlowConfig{}, over_kink([](double x) { return std::tanh(0.5 * x); }, kPi / 3));
  REQUIRE(r.converged);
  const auto fit = fit_modulation(r.field, 10.0);
  CHECK(fit.residual <= 1e-2);
  CHECK(std::abs(fit.a) <= kGrid.dx());
  CHECK(std::abs(fit.theta - kPi / 3) <= 1e-3);
}

TEST_CASE("pinned flow requires a zero at the center") {
  CHECK_THROWS_AS(pinned_zero_minimize(kGrid, FlowConfig{}, Field::from_background(kGrid, ConstantBackground{})),
                  std::invalid_argument);
  const GridSpec other = GridSpec::make(40.0, 512);
  CHECK_THROWS_AS(pinned_zero_minimize(kGrid, FlowConfig{}, Field::from_background(other, SolitonParams{})),
                  std::invalid_argument);
}

TEST_CASE("traveling-wave residual of exact waves") {
  for (double c : {0.0, 0.5, 1.2}) {
    CHECK(traveling_wave_residual(Field::from_background(kGrid, SolitonParams{c, 1.0, 0.5}), c) <= 1e-8);
  }
  CHECK(traveling_wave_residual(Field::from_background(kGrid, SolitonParams{0.5, 0.0, 0.0}), 0.7) > 1e-2);
}
