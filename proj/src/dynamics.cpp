#include "gplab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gplab/functionals.hpp"
#include "gplab/spectral.hpp"

namespace gplab {
namespace {

constexpr cplx kI(0.0, 1.0);

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double bump_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

void check_blow_up(const std::vector<cplx>& w) {
  for (const auto& z : w) {
    if (!(std::abs(z) <= kBlowUpThreshold)) {
      throw SolverBlowUp("perturbation exceeded " + std::to_string(kBlowUpThreshold) +
                         " in sup norm; the split-step solver has diverged");
    }
  }
}

}  // namespace

void EvolveConfig::validate(const GridSpec& grid) const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon T must be positive");
  if (log_every == 0) throw std::invalid_argument("log_every must be at least 1");
  if (!(com_cutoff > 1.0)) throw std::invalid_argument("cutoff radius R must exceed 1");
  if (dt > 0.1 * grid.dx() * (1.0 + 1e-12)) {
    throw std::invalid_argument("dt must not exceed 0.1 dx");
  }
  if (com_cutoff > 0.5 * grid.half_length) {
    throw std::invalid_argument("cutoff radius R must not exceed L / 2");
  }
}

std::size_t EvolveConfig::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

double ConservedLog::max_relative_energy_drift() const {
  double worst = 0.0;
  for (double e : energy) worst = std::max(worst, std::abs(e - energy.front()));
  return worst / std::max(std::abs(energy.front()), 1e-300);
}

double ConservedLog::max_momentum_drift() const {
  double worst = 0.0;
  for (double p : untwisted) worst = std::max(worst, distance_mod_pi(p, untwisted.front()));
  return worst;
}

double ConservedLog::max_relative_mass_drift() const {
  double worst = 0.0;
  for (double m : mass) worst = std::max(worst, std::abs(m - mass.front()));
  return worst / std::max(std::abs(mass.front()), 1e-300);
}

void ConservedLog::write_csv(std::ostream& out) const {
  out << "t,energy,untwisted_p,relative_P,mass,com,com_rate\n";
  const auto precision = out.precision(17);
  for (std::size_t k = 0; k < size(); ++k) {
    out << times[k] << ',' << energy[k] << ',' << untwisted[k] << ',' << relative_P[k] << ','
        << mass[k] << ',' << com[k] << ',' << com_rate[k] << '\n';
  }
  out.precision(precision);
}

double cutoff(double x) {
  const double s = std::abs(x);
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = bump(2.0 - s);
  const double b = bump(s - 1.0);
  return a / (a + b);
}

double cutoff_derivative(double x) {
  const double s = std::abs(x);
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double a = bump(2.0 - s);
  const double b = bump(s - 1.0);
  const double da = -bump_derivative(2.0 - s);
  const double db = bump_derivative(s - 1.0);
  const double g = (da * b - a * db) / ((a + b) * (a + b));
  return x > 0.0 ? g : -g;
}

double localized_first_moment(const Field& f, double radius) {
  const auto v = f.values();
  const auto& grid = f.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = grid.x(j);
    sum += x * (std::norm(v[j]) - 1.0) * cutoff(x / radius);
  }
  return sum * grid.dx();
}

double localized_first_moment_rate(const Field& f, double radius) {
  const auto v = f.values();
  const auto dv = f.derivative();
  const auto& grid = f.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double y = grid.x(j) / radius;
    const double weight = cutoff(y) + y * cutoff_derivative(y);  // (x chi_R)'
    sum += dot(kI * v[j], dv[j]) * weight;
  }
  return 2.0 * sum * grid.dx();
}

SplitStepper::SplitStepper(const GridSpec& grid, const Background& background, double dt)
    : grid_(grid), dt_(dt), twist_(background_twist(background)) {
  background_.resize(grid.n_points);
  background_xx_.resize(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    background_[j] = background_value(background, grid.x(j));
    background_xx_[j] = background_second_derivative(background, grid.x(j));
  }
  const auto k = wavenumbers(grid);
  const double kappa = twist_ / (2.0 * grid.half_length);
  propagator_.resize(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double kk = k[j] + kappa;
    propagator_[j] = std::polar(1.0, -kk * kk * dt);
  }
}

void SplitStepper::pointwise(std::vector<cplx>& w, double h) const {
  for (std::size_t j = 0; j < w.size(); ++j) {
    const cplx v0 = background_[j];
    const cplx v0xx = background_xx_[j];
    // w_t = i (V0'' - v (|v|^2 - 1)), v = V0 + w
    auto rhs = [&](cplx z) {
      const cplx v = v0 + z;
      return kI * (v0xx - v * (std::norm(v) - 1.0));
    };
    const cplx z = w[j];
    const cplx k1 = rhs(z);
    const cplx k2 = rhs(z + 0.5 * h * k1);
    const cplx k3 = rhs(z + 0.5 * h * k2);
    const cplx k4 = rhs(z + h * k3);
    w[j] = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

void SplitStepper::advance(std::vector<cplx>& w) const {
  pointwise(w, 0.5 * dt_);
  untwist(w, twist_);
  auto spectrum = fft_forward(w);
  for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] *= propagator_[j];
  w = fft_inverse(spectrum);
  retwist(w, twist_);
  pointwise(w, 0.5 * dt_);
  check_blow_up(w);
}

Field step(const Field& f, double dt) {
  f.require_valid();
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("step needs a finite nonzero dt");
  SplitStepper stepper(f.grid(), f.background(), dt);
  std::vector<cplx> w(f.perturbation().begin(), f.perturbation().end());
  stepper.advance(w);
  return f.with_perturbation(std::move(w));
}

namespace {

void record(ConservedLog& log, const Field& f, double t, double radius) {
  const auto momentum = untwisted_momentum(f, DecayCheck::kSkip);
  log.times.push_back(t);
  log.energy.push_back(energy(f, DecayCheck::kSkip));
  log.untwisted.push_back(momentum.untwisted);
  log.untwisted_lifted.push_back(momentum.lifted);
  log.relative_P.push_back(momentum.relative_P);
  log.mass.push_back(mass(f, DecayCheck::kSkip));
  log.com.push_back(localized_first_moment(f, radius));
  log.com_rate.push_back(localized_first_moment_rate(f, radius));
}

}  // namespace

Trajectory evolve(const Field& f, const EvolveConfig& cfg) { return evolve(f, cfg, {}); }

Trajectory evolve(const Field& f, const EvolveConfig& cfg, const EvolveObserver& observer) {
  f.require_valid();
  cfg.validate(f.grid());
  const SplitStepper stepper(f.grid(), f.background(), cfg.dt);
  std::vector<cplx> w(f.perturbation().begin(), f.perturbation().end());

  ConservedLog log;
  record(log, f, 0.0, cfg.com_cutoff);
  if (observer) observer(f, 0.0);
  const std::size_t steps = cfg.steps();
  for (std::size_t n = 1; n <= steps; ++n) {
    stepper.advance(w);
    if (n % cfg.log_every == 0 || n == steps) {
      const Field state = f.with_perturbation(w);
      const double t = static_cast<double>(n) * cfg.dt;
      record(log, state, t, cfg.com_cutoff);
      if (observer) observer(state, t);
    }
  }
  return Trajectory{f.with_perturbation(std::move(w)), std::move(log)};
}

double com_law_residual(const ConservedLog& log) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < log.size(); ++k) {
    const double rate = (log.com[k + 1] - log.com[k - 1]) / (log.times[k + 1] - log.times[k - 1]);
    worst = std::max(worst, std::abs(rate - log.com_rate[k]));
  }
  return worst;
}

double com_law_residual(const Field& f, const EvolveConfig& cfg) {
  return com_law_residual(evolve(f, cfg).log);
}

}  // namespace gplab
