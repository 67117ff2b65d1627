#include "gplab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gplab {

void StabilityReport::write_csv(std::ostream& out) const {
  out << "t,a,theta,residual\n";
  const auto precision = out.precision(17);
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << times[k] << ',' << fits[k].a << ',' << fits[k].theta << ',' << fits[k].residual << '\n';
  }
  out.precision(precision);
}

void summarize(StabilityReport& report) {
  report.sup_residual = 0.0;
  report.K_estimate = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto n = static_cast<double>(report.times.size());
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    const double x = 1.0 + report.times[k];
    const double y = std::abs(report.fits[k].a);
    report.sup_residual = std::max(report.sup_residual, report.fits[k].residual);
    if (report.epsilon > 0.0) report.K_estimate = std::max(report.K_estimate, y / (report.epsilon * x));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  report.drift_slope = (n >= 2.0 && denom > 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
}

StabilityReport stability_experiment(const PerturbationSpec& spec, const EvolveConfig& cfg,
                                     const GridSpec& grid) {
  StabilityReport report;
  report.epsilon = spec.epsilon;
  const Field initial = make_perturbed_kink(spec, grid);
  try {
    auto trajectory = evolve(initial, cfg, [&](const Field& state, double t) {
      report.times.push_back(t);
      report.fits.push_back(fit_modulation(state, spec.A));
    });
    report.log = std::move(trajectory.log);
  } catch (const SolverBlowUp& e) {
    report.aborted = true;
    report.abort_reason = e.what();
  }
  summarize(report);
  return report;
}

}  // namespace gplab
