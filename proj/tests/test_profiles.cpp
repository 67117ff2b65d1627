#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gplab/profiles.hpp"
#include "support.hpp"

using namespace gplab;
using gplab::testing::Gen;
using gplab::testing::kPi;
using gplab::testing::kSqrt2;

TEST_CASE("soliton values at reference points") {
  CHECK(std::abs(eval_soliton({0.0, 0.0, 0.0}, 0.0)) == 0.0);
  CHECK(std::abs(eval_soliton({0.0, 0.0, 0.0}, 40.0) - 1.0) <= 1e-12);
  CHECK(std::abs(eval_soliton({1.0, 0.0, 0.0}, 0.0) - cplx(0.0, 1.0 / kSqrt2)) <= 1e-15);
  // Shift and phase act as e^{i theta} u_c(x - a).
  const cplx base = eval_soliton({0.7, 0.0, 0.0}, 1.3 - 2.0);
  const cplx moved = eval_soliton({0.7, 2.0, 0.4}, 1.3);
  CHECK(std::abs(moved - std::polar(1.0, 0.4) * base) <= 1e-15);
}

TEST_CASE("sonic member is a constant of modulus one") {
  for (double x : {-30.0, -1.0, 0.0, 2.5, 100.0}) {
    const cplx v = eval_soliton({kSqrt2, 0.0, 0.0}, x);
    CHECK(std::abs(v - cplx(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(eval_soliton_derivative({kSqrt2, 0.0, 0.0}, x)) <= 1e-15);
  }
}

TEST_CASE("supersonic speeds are rejected") {
  CHECK_THROWS_AS(eval_soliton({1.5, 0.0, 0.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(eval_soliton_derivative({-1.5, 0.0, 0.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(soliton_energy(1.5), std::domain_error);
  CHECK_THROWS_AS(soliton_mass(-1.5), std::domain_error);
  CHECK_THROWS_AS(soliton_closed_forms(2.0), std::domain_error);
}

TEST_CASE("soliton energy closed form") {
  CHECK(soliton_energy(0.0) == doctest::Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-14));
  CHECK(soliton_energy(kSqrt2) == doctest::Approx(0.0));
  CHECK(soliton_energy(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(soliton_energy(-1.0) == soliton_energy(1.0));
}

TEST_CASE("soliton momentum closed form and domain") {
  CHECK(soliton_momentum_limit_at_rest() == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(soliton_momentum(kSqrt2) == doctest::Approx(0.0));
  CHECK(soliton_momentum(1.0) == doctest::Approx(kPi / 4 - 0.5).epsilon(1e-14));
  CHECK(soliton_momentum(1e-12) == doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK_THROWS_AS(soliton_momentum(0.0), std::domain_error);
  CHECK_THROWS_AS(soliton_momentum(-0.5), std::domain_error);
  CHECK_THROWS_AS(soliton_momentum(1.5), std::domain_error);
}

TEST_CASE("soliton momentum is strictly decreasing") {
  double prev = soliton_momentum_limit_at_rest();
  for (int k = 1; k <= 1000; ++k) {
    const double p = soliton_momentum(kSqrt2 * k / 1000.0);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("momentum derivative matches a centered difference") {
  for (double c : {0.2, 0.5, 0.9, 1.2, 1.35}) {
    const double h = 1e-6;
    const double fd = (soliton_momentum(c + h) - soliton_momentum(c - h)) / (2 * h);
    CHECK(soliton_momentum_derivative(c) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(soliton_momentum_derivative(c) == doctest::Approx(-std::sqrt(2 - c * c)));
  }
}

TEST_CASE("energy slope equals speed along the family") {
  // dE/dp = (dE/dc) / (dp/dc) = c.
  for (double c : {0.1, 0.4, 0.8, 1.1, 1.3}) {
    const double h = 1e-6;
    const double de = soliton_energy(c + h) - soliton_energy(c - h);
    const double dp = soliton_momentum(c + h) - soliton_momentum(c - h);
    CHECK(de / dp == doctest::Approx(c).epsilon(1e-7));
  }
}

TEST_CASE("speed_from_momentum inverts the momentum") {
  CHECK(speed_from_momentum(kPi / 4 - 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(speed_from_momentum(0.0) == doctest::Approx(kSqrt2).epsilon(1e-12));
  const double p = 0.45 * kPi;
  CHECK(soliton_momentum(speed_from_momentum(p)) == doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS_AS(speed_from_momentum(-0.1), std::domain_error);
  CHECK_THROWS_AS(speed_from_momentum(kPi / 2), std::domain_error);
  CHECK_THROWS_AS(speed_from_momentum(2.0), std::domain_error);
}

TEST_CASE("property: momentum round trip over random speeds and momenta") {
  Gen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const double c = gen.real(1e-3, kSqrt2 - 1e-3);
    CHECK(speed_from_momentum(soliton_momentum(c)) == doctest::Approx(c).epsilon(1e-10));
    const double p = gen.real(1e-3, kPi / 2 - 1e-3);
    CHECK(soliton_momentum(speed_from_momentum(p)) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("soliton mass closed form") {
  CHECK(soliton_mass(0.0) == doctest::Approx(-kSqrt2).epsilon(1e-15));
  CHECK(soliton_mass(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(soliton_mass(kSqrt2) == doctest::Approx(0.0));
}

TEST_CASE("closed forms bundle and limits") {
  const auto cf = soliton_closed_forms(1.0);
  CHECK(cf.energy == doctest::Approx(1.0 / 3.0));
  CHECK(cf.momentum == doctest::Approx(kPi / 4 - 0.5));
  CHECK(cf.momentum_derivative == doctest::Approx(-1.0));
  CHECK(cf.mass == doctest::Approx(-1.0));
  CHECK(std::abs(cf.limits.first) == doctest::Approx(1.0));
  CHECK(std::abs(cf.limits.second) == doctest::Approx(1.0));
  CHECK(std::abs(cf.limits.first - eval_soliton({1.0, 0.0, 0.0}, -60.0)) <= 1e-12);
  CHECK(std::abs(cf.limits.second - eval_soliton({1.0, 0.0, 0.0}, 60.0)) <= 1e-12);
  const auto kink = soliton_closed_forms(0.0);
  CHECK(kink.momentum == doctest::Approx(kPi / 2));
}

TEST_CASE("untwisted momentum of all family members") {
  CHECK(soliton_untwisted_momentum(0.0) == doctest::Approx(kPi / 2));
  CHECK(soliton_untwisted_momentum(1.0) == doctest::Approx(kPi / 4 - 0.5));
  // Conjugation maps u_c to u_{-c} and p to -p modulo pi.
  CHECK(distance_mod_pi(soliton_untwisted_momentum(-1.0), -(kPi / 4 - 0.5)) <= 1e-14);
  CHECK(soliton_untwisted_momentum(kSqrt2) == doctest::Approx(0.0));
}

TEST_CASE("property: soliton modulus bounded by one and tends to one") {
  Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const SolitonParams sp{gen.real(-kSqrt2, kSqrt2), gen.real(-5, 5), gen.real(-kPi, kPi)};
    // the core widens like 1 / sqrt(2 - c^2); sample the limits well outside it
    const double far = 60.0 / std::sqrt(2.0 - sp.speed * sp.speed);
    for (int k = 0; k < 50; ++k) {
      CHECK(std::abs(eval_soliton(sp, gen.real(-30, 30))) <= 1.0 + 1e-15);
    }
    CHECK(std::abs(std::abs(eval_soliton(sp, far)) - 1.0) <= 1e-12);
    CHECK(std::abs(std::abs(eval_soliton(sp, -far)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: analytic derivatives match finite differences") {
  Gen gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const SolitonParams sp{gen.real(-1.4, 1.4), gen.real(-3, 3), gen.real(-kPi, kPi)};
    const double x = gen.real(-8, 8);
    const double h = 1e-5;
    const cplx d1 = (eval_soliton(sp, x + h) - eval_soliton(sp, x - h)) / (2 * h);
    const cplx d2 = (eval_soliton_derivative(sp, x + h) - eval_soliton_derivative(sp, x - h)) / (2 * h);
    CHECK(std::abs(eval_soliton_derivative(sp, x) - d1) <= 1e-8);
    CHECK(std::abs(eval_soliton_second_derivative(sp, x) - d2) <= 1e-8);
  }
}

TEST_CASE("property: family solves the traveling-wave equation pointwise") {
  // -i c u' + u'' + u (1 - |u|^2) = 0 for u = u_c(x).
  Gen gen(7);
  for (int trial = 0; trial < 300; ++trial) {
    const double c = gen.real(-kSqrt2, kSqrt2);
    const SolitonParams sp{c, 0.0, 0.0};
    const double x = gen.real(-10, 10);
    const cplx u = eval_soliton(sp, x);
    const cplx r = cplx(0, -c) * eval_soliton_derivative(sp, x) +
                   eval_soliton_second_derivative(sp, x) + u * (1.0 - std::norm(u));
    CHECK(std::abs(r) <= 1e-13);
  }
}

TEST_CASE("angles modulo pi") {
  CHECK(canonical_mod_pi(kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(canonical_mod_pi(-kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(canonical_mod_pi(kPi) == doctest::Approx(0.0));
  CHECK(canonical_mod_pi(3.0) == doctest::Approx(3.0 - kPi));
  CHECK(distance_mod_pi(0.0, kPi - 1e-3) == doctest::Approx(1e-3).epsilon(1e-9));
  Gen gen(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = gen.real(-50, 50);
    const double r = canonical_mod_pi(v);
    CHECK(r > -kPi / 2);
    CHECK(r <= kPi / 2);
    const double turns = (v - r) / kPi;
    CHECK(std::abs(turns - std::round(turns)) <= 1e-12);
    CHECK(distance_mod_pi(v, r) <= 1e-12);
  }
}
