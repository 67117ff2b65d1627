#pragma once

#include <cstddef>
#include <vector>

#include "gplab/field.hpp"

namespace gplab {

struct FlowConfig {
  double step_size = 0.5;        ///< tau, in the preconditioned metric
  std::size_t max_iters = 200000;
  double grad_tol = 1e-7;        ///< on the L^2 norm of the projected gradient
  double constraint_tol = 1e-10;
  /// alpha in the preconditioner (alpha - d^2/dx^2)^{-1}.
  double preconditioner_shift = 1.0;
  /// Iterations per stage before the background speed is re-estimated from the
  /// phase drop across the core.
  std::size_t rebase_interval = 1500;
  std::size_t max_rebases = 4;
  /// Stop rebasing once the estimate moves the speed by less than this.
  double rebase_tol = 1e-6;

  void validate() const;
};

struct MinimizationResult {
  Field field;
  double energy = 0.0;
  double momentum = 0.0;    ///< achieved constraint value (continuous lift)
  double multiplier = 0.0;  ///< Lagrange multiplier, the speed estimate
  double residual = 0.0;    ///< L^2 norm of the projected gradient at exit
  std::size_t iterations = 0;
  bool converged = false;
  /// Largest energy increase between accepted iterates (restoration steps only).
  double max_energy_increase = 0.0;
};

/// Minimizes the energy at fixed untwisted momentum `target_p`, starting from the
/// traveling wave of speed `init_c`. The constraint is tracked through the
/// continuous lift [p](V0) + relative_P, which cannot jump by pi along the flow.
///
/// Each iteration: L^2 gradients grad E = -v'' - v (1 - |v|^2) and
/// grad p = -i v'; both are preconditioned, the multiplier removes the
/// constraint-violating component, a step of size tau is taken, and Newton
/// corrections along the preconditioned momentum gradient restore the
/// constraint. The step is halved whenever the energy increases.
MinimizationResult emin_minimize(double target_p, double init_c, const GridSpec& grid,
                                 const FlowConfig& cfg);

struct EminPoint {
  double p = 0.0;
  double energy = 0.0;
  double multiplier = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Sweep of emin_minimize, sorted by p. Each point starts from the wave whose
/// momentum is p + init_offset (clamped below pi/2), not from the minimizer.
std::vector<EminPoint> emin_curve(std::vector<double> p_values, const GridSpec& grid,
                                  const FlowConfig& cfg, double init_offset = 0.1);

/// Energy gradient flow with v held at 0 at the central node (x = 0).
/// `init` must vanish there.
MinimizationResult pinned_zero_minimize(const GridSpec& grid, const FlowConfig& cfg,
                                        const Field& init);

/// || -i c v' + v'' + v (1 - |v|^2) ||_{L^2} on the grid.
double traveling_wave_residual(const Field& f, double speed);

}  // namespace gplab
