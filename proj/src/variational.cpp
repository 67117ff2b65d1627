#include "gplab/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "gplab/functionals.hpp"
#include "gplab/spectral.hpp"

namespace gplab {
namespace {

constexpr cplx kI(0.0, 1.0);

double inner(std::span<const cplx> a, std::span<const cplx> b, double dx) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += dot(a[j], b[j]);
  return sum * dx;
}

double norm_l2(std::span<const cplx> a, double dx) { return std::sqrt(inner(a, a, dx)); }

// Discrete energy, momentum and their L^2 gradients for perturbations of a fixed
// background, with every background sample and spectral multiplier cached.
// The formulas coincide with those of energy() and untwisted_momentum().
class Flow {
 public:
  Flow(const GridSpec& grid, const Background& background, double shift)
      : grid_(grid),
        background_(background),
        tail_energy_(background_tail_energy(background, grid.half_length)),
        lift0_(background_momentum_lift(background)) {
    const std::size_t n = grid.n_points;
    const double twist = background_twist(background);
    const double kappa = twist / (2.0 * grid.half_length);
    const auto k = wavenumbers(grid);
    v0_.resize(n);
    dv0_.resize(n);
    d2v0_.resize(n);
    twist_.resize(n);
    ik_.resize(n);
    smoother_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid.x(j);
      v0_[j] = background_value(background, x);
      dv0_[j] = background_derivative(background, x);
      d2v0_[j] = background_second_derivative(background, x);
      twist_[j] = std::polar(1.0, twist * static_cast<double>(j) / static_cast<double>(n));
      const double kk = k[j] + kappa;
      ik_[j] = (j == n / 2 && twist == 0.0) ? cplx(0.0) : cplx(0.0, kk);
      smoother_[j] = 1.0 / (shift + kk * kk);
    }
  }

  const GridSpec& grid() const { return grid_; }
  const Background& background() const { return background_; }
  double dx() const { return grid_.dx(); }
  std::size_t size() const { return grid_.n_points; }

  std::vector<cplx> derivative(std::span<const cplx> w) const { return apply(w, ik_); }
  /// (alpha - d^2/dx^2)^{-1} g.
  std::vector<cplx> precondition(std::span<const cplx> g) const { return apply(g, smoother_); }

  double energy(std::span<const cplx> w, std::span<const cplx> dw) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const cplx v = v0_[j] + w[j];
      const double defect = 1.0 - std::norm(v);
      sum += 0.5 * std::norm(dv0_[j] + dw[j]) + 0.25 * defect * defect;
    }
    return sum * dx() + tail_energy_;
  }

  /// [p](V0) lift plus relative momentum; continuous along the flow.
  double momentum(std::span<const cplx> w, std::span<const cplx> dw) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const cplx iw = kI * w[j];
      sum += 0.5 * dot(iw, dw[j]) + dot(iw, dv0_[j]);
    }
    return lift0_ + sum * dx();
  }

  /// grad E = -(V0'' + D D w) - v (1 - |v|^2).
  std::vector<cplx> energy_gradient(std::span<const cplx> w, std::span<const cplx> dw) const {
    const auto d2w = derivative(dw);
    std::vector<cplx> g(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      const cplx v = v0_[j] + w[j];
      g[j] = -(d2v0_[j] + d2w[j]) - v * (1.0 - std::norm(v));
    }
    return g;
  }

  /// grad p = -i v'.
  std::vector<cplx> momentum_gradient(std::span<const cplx> dw) const {
    std::vector<cplx> g(dw.size());
    for (std::size_t j = 0; j < dw.size(); ++j) g[j] = -kI * (dv0_[j] + dw[j]);
    return g;
  }

  cplx background_at(std::size_t j) const { return v0_[j]; }

  /// Phase drop across the core of an iterate over a background of speed c:
  /// the background drop 2 atan2(sqrt(2 - c^2), c) plus the phase that the
  /// far-field gradient accumulates over one period.
  double core_phase_drop(double speed, std::span<const cplx> w, std::span<const cplx> dw) const {
    const cplx v = v0_[0] + w[0];
    const double far_gradient = dot(kI * v, dv0_[0] + dw[0]) / std::norm(v);
    const double drop = 2.0 * std::atan2(std::sqrt(std::max(0.0, 2.0 - speed * speed)), speed);
    return drop + 2.0 * grid_.half_length * far_gradient;
  }

 private:
  std::vector<cplx> apply(std::span<const cplx> w, const std::vector<cplx>& multiplier) const {
    std::vector<cplx> work(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) work[j] = w[j] * std::conj(twist_[j]);
    auto spectrum = fft_forward(work);
    for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] *= multiplier[j];
    auto out = fft_inverse(spectrum);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= twist_[j];
    return out;
  }
  std::vector<cplx> apply(std::span<const cplx> w, const std::vector<double>& multiplier) const {
    std::vector<cplx> work(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) work[j] = w[j] * std::conj(twist_[j]);
    auto spectrum = fft_forward(work);
    for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] *= multiplier[j];
    auto out = fft_inverse(spectrum);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= twist_[j];
    return out;
  }

  GridSpec grid_;
  Background background_;
  double tail_energy_;
  double lift0_;
  std::vector<cplx> v0_, dv0_, d2v0_;
  std::vector<cplx> twist_;
  std::vector<cplx> ik_;
  std::vector<double> smoother_;
};

// Newton corrections along the preconditioned momentum gradient; returns the
// corrected perturbation and its derivative.
void restore_momentum(const Flow& flow, std::vector<cplx>& w, std::vector<cplx>& dw,
                      double target, double tol) {
  for (int k = 0; k < 12; ++k) {
    const double gap = target - flow.momentum(w, dw);
    if (std::abs(gap) <= tol) return;
    const auto gp = flow.momentum_gradient(dw);
    const auto pgp = flow.precondition(gp);
    const double curvature = inner(gp, pgp, flow.dx());
    if (!(curvature > 0.0)) return;
    const double s = gap / curvature;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += s * pgp[j];
    dw = flow.derivative(w);
  }
}

struct Stage {
  std::vector<cplx> w;
  double energy = 0.0;
  double multiplier = 0.0;
  double residual = 0.0;
  double momentum = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double max_energy_increase = 0.0;
};

// Projected, preconditioned gradient flow at fixed momentum on one background.
Stage constrained_flow(const Flow& flow, double target_p, const FlowConfig& cfg,
                       std::size_t budget, std::vector<cplx> start) {
  const double restore_tol = 0.1 * cfg.constraint_tol;
  Stage st;
  st.w = std::move(start);
  auto dw = flow.derivative(st.w);
  restore_momentum(flow, st.w, dw, target_p, restore_tol);
  st.energy = flow.energy(st.w, dw);
  double tau = cfg.step_size;

  for (std::size_t iter = 0;; ++iter) {
    const auto ge = flow.energy_gradient(st.w, dw);
    const auto gp = flow.momentum_gradient(dw);
    const double gp_sq = inner(gp, gp, flow.dx());
    const double lambda_l2 = gp_sq > 0.0 ? inner(ge, gp, flow.dx()) / gp_sq : 0.0;
    std::vector<cplx> residual(ge.size());
    for (std::size_t j = 0; j < ge.size(); ++j) residual[j] = ge[j] - lambda_l2 * gp[j];

    st.iterations = iter;
    st.multiplier = lambda_l2;
    st.residual = norm_l2(residual, flow.dx());
    st.momentum = flow.momentum(st.w, dw);
    if (st.residual <= cfg.grad_tol && std::abs(st.momentum - target_p) <= cfg.constraint_tol) {
      st.converged = true;
      return st;
    }
    if (iter == budget) return st;

    const auto pge = flow.precondition(ge);
    const auto pgp = flow.precondition(gp);
    const double curvature = inner(gp, pgp, flow.dx());
    const double lambda = curvature > 0.0 ? inner(ge, pgp, flow.dx()) / curvature : 0.0;

    bool accepted = false;
    while (tau > 1e-14) {
      auto w = st.w;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= tau * (pge[j] - lambda * pgp[j]);
      auto dw_trial = flow.derivative(w);
      restore_momentum(flow, w, dw_trial, target_p, restore_tol);
      const double e_trial = flow.energy(w, dw_trial);
      if (e_trial <= st.energy + 1e-10) {
        st.max_energy_increase = std::max(st.max_energy_increase, e_trial - st.energy);
        st.w = std::move(w);
        dw = std::move(dw_trial);
        st.energy = e_trial;
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) return st;
  }
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("step size must be positive");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  if (!(grad_tol >= 1e-12)) throw std::invalid_argument("grad_tol must be >= 1e-12");
  if (!(constraint_tol >= 1e-12)) throw std::invalid_argument("constraint_tol must be >= 1e-12");
  if (!(preconditioner_shift > 0.0)) throw std::invalid_argument("preconditioner shift must be positive");
  if (rebase_interval == 0) throw std::invalid_argument("rebase interval must be positive");
  if (!(rebase_tol >= 0.0)) throw std::invalid_argument("rebase tolerance must be nonnegative");
}

double traveling_wave_residual(const Field& f, double speed) {
  const auto v = f.values();
  const auto dv = f.derivative();
  auto dw = spectral_derivative(f.perturbation(), f.grid(), f.twist());
  auto d2w = spectral_derivative(dw, f.grid(), f.twist());
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const cplx vxx = background_second_derivative(f.background(), f.grid().x(j)) + d2w[j];
    sum += std::norm(-kI * speed * dv[j] + vxx + v[j] * (1.0 - std::norm(v[j])));
  }
  return std::sqrt(sum * f.grid().dx());
}

MinimizationResult emin_minimize(double target_p, double init_c, const GridSpec& grid,
                                 const FlowConfig& cfg) {
  if (!(target_p >= 0.0 && target_p < 0.5 * std::numbers::pi)) {
    throw std::domain_error("target momentum must lie in [0, pi/2)");
  }
  if (!(init_c > 0.0 && init_c < kSoundSpeed)) {
    throw std::domain_error("initial speed must lie in (0, sqrt(2))");
  }
  cfg.validate();

  // On the twisted torus the far-field phase jump is frozen by the background,
  // so a mismatched start leaves a phase ramp that relaxes only at rate ~ 1/L^2.
  // Each stage therefore restarts on the family member whose phase drop
  // 2 atan2(sqrt(2 - c^2), c) equals the core drop of the current iterate;
  // the final stage runs on the remaining budget.
  double speed = init_c;
  std::size_t used = 0;
  Stage st;
  std::optional<Flow> flow;
  for (std::size_t stage = 0;; ++stage) {
    flow.emplace(grid, SolitonParams{speed, 0.0, 0.0}, cfg.preconditioner_shift);
    const bool last = stage == cfg.max_rebases;
    const std::size_t remaining = cfg.max_iters - used;
    const std::size_t budget = last ? remaining : std::min(cfg.rebase_interval, remaining);
    const double previous_increase = st.max_energy_increase;
    st = constrained_flow(*flow, target_p, cfg, budget,
                          std::vector<cplx>(grid.n_points, cplx(0.0)));
    st.max_energy_increase = std::max(st.max_energy_increase, previous_increase);
    used += st.iterations;
    if (st.converged || last || used >= cfg.max_iters) break;
    const double drop = std::clamp(flow->core_phase_drop(speed, st.w, flow->derivative(st.w)), 0.0,
                                   std::numbers::pi);
    const double next = kSoundSpeed * std::cos(0.5 * drop);
    if (std::abs(next - speed) <= cfg.rebase_tol) {
      // background already consistent with the multiplier: keep flowing on it
      const double increase = st.max_energy_increase;
      st = constrained_flow(*flow, target_p, cfg, cfg.max_iters - used, std::move(st.w));
      st.max_energy_increase = std::max(st.max_energy_increase, increase);
      used += st.iterations;
      break;
    }
    speed = next;
  }

  Field field(grid, flow->background(), st.w);
  MinimizationResult result{field, st.energy};
  result.momentum = st.momentum;
  result.multiplier = st.multiplier;
  result.residual = st.residual;
  result.iterations = used;
  result.converged = st.converged;
  result.max_energy_increase = st.max_energy_increase;
  return result;
}

std::vector<EminPoint> emin_curve(std::vector<double> p_values, const GridSpec& grid,
                                  const FlowConfig& cfg, double init_offset) {
  std::sort(p_values.begin(), p_values.end());
  std::vector<EminPoint> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    const double start_p = std::clamp(p + init_offset, 1e-3, 0.5 * std::numbers::pi - 1e-3);
    const auto r = emin_minimize(p, speed_from_momentum(start_p), grid, cfg);
    out.push_back(EminPoint{p, r.energy, r.multiplier, r.iterations, r.converged});
  }
  return out;
}

MinimizationResult pinned_zero_minimize(const GridSpec& grid, const FlowConfig& cfg,
                                        const Field& init) {
  cfg.validate();
  if (!(init.grid() == grid)) throw std::invalid_argument("initial field lives on another grid");
  const std::size_t pin = grid.center_index();
  const Flow flow(grid, init.background(), cfg.preconditioner_shift);
  const cplx pinned = -flow.background_at(pin);
  if (std::abs(init.perturbation()[pin] - pinned) > 1e-8) {
    throw std::invalid_argument("initial field must vanish at the central node");
  }

  std::vector<cplx> unit(grid.n_points, cplx(0.0));
  unit[pin] = 1.0;
  const auto kernel = flow.precondition(unit);

  std::vector<cplx> w(init.perturbation().begin(), init.perturbation().end());
  w[pin] = pinned;
  auto dw = flow.derivative(w);
  double e = flow.energy(w, dw);
  double tau = cfg.step_size;

  MinimizationResult result{init, e};
  for (std::size_t iter = 0;; ++iter) {
    const auto ge = flow.energy_gradient(w, dw);
    auto free_part = ge;
    free_part[pin] = 0.0;  // absorbed by the pin's multiplier
    result.iterations = iter;
    result.residual = norm_l2(free_part, flow.dx());
    if (result.residual <= cfg.grad_tol) {
      result.converged = true;
      break;
    }
    if (iter == cfg.max_iters) break;

    // Preconditioned gradient with the pinned entry projected out.
    auto direction = flow.precondition(ge);
    const cplx ratio = direction[pin] / kernel[pin];
    for (std::size_t j = 0; j < direction.size(); ++j) direction[j] -= ratio * kernel[j];

    bool accepted = false;
    while (tau > 1e-14) {
      auto trial = w;
      for (std::size_t j = 0; j < trial.size(); ++j) trial[j] -= tau * direction[j];
      trial[pin] = pinned;
      auto dtrial = flow.derivative(trial);
      const double e_trial = flow.energy(trial, dtrial);
      if (e_trial <= e) {
        w = std::move(trial);
        dw = std::move(dtrial);
        e = e_trial;
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
  }
  result.field = init.with_perturbation(w);
  result.energy = e;
  result.momentum = flow.momentum(w, dw);
  result.multiplier = 0.0;
  return result;
}

}  // namespace gplab
