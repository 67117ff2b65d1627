#pragma once

#include <string>
#include <vector>

#include "gplab/dynamics.hpp"
#include "gplab/modulation.hpp"
#include "gplab/perturbation.hpp"

namespace gplab {

struct StabilityReport {
  std::vector<double> times;
  std::vector<ModulationFit> fits;
  double epsilon = 0.0;
  double sup_residual = 0.0;  ///< max of the fit residuals
  double drift_slope = 0.0;   ///< least-squares slope of |a(t)| against 1 + t
  double K_estimate = 0.0;    ///< max_t |a(t)| / (epsilon (1 + t)); 0 when epsilon = 0
  ConservedLog log;
  bool aborted = false;       ///< solver blow-up; the series stop at the last good time
  std::string abort_reason;

  /// CSV with header `t,a,theta,residual`.
  void write_csv(std::ostream& out) const;
};

/// Builds the perturbed kink, evolves it and fits (a, theta) at every logged
/// time with the window spec.A.
StabilityReport stability_experiment(const PerturbationSpec& spec, const EvolveConfig& cfg,
                                     const GridSpec& grid);

/// Fills sup_residual, drift_slope and K_estimate from times and fits.
void summarize(StabilityReport& report);

}  // namespace gplab
