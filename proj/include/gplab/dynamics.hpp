#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gplab/field.hpp"

namespace gplab {

struct EvolveConfig {
  double dt = 1e-3;
  double horizon = 1.0;        ///< final time T
  std::size_t log_every = 100;  ///< steps between log samples
  double com_cutoff = 10.0;    ///< cutoff radius R of chi_R

  /// dt > 0, T > 0, log_every >= 1, R > 1, dt <= 0.1 dx, R <= L / 2.
  void validate(const GridSpec& grid) const;
  std::size_t steps() const;
};

/// Conserved quantities and center-of-mass diagnostics along a trajectory.
struct ConservedLog {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> untwisted;         ///< representative in (-pi/2, pi/2]
  std::vector<double> untwisted_lifted;  ///< continuous lift of the same series
  std::vector<double> relative_P;
  std::vector<double> mass;
  std::vector<double> com;       ///< int x (|v|^2 - 1) chi_R
  std::vector<double> com_rate;  ///< 2 int <i v, v_x> (x chi_R)'

  std::size_t size() const { return times.size(); }
  double max_relative_energy_drift() const;
  double max_momentum_drift() const;  ///< in R / pi Z
  double max_relative_mass_drift() const;
  /// CSV with header `t,energy,untwisted_p,relative_P,mass,com,com_rate`.
  void write_csv(std::ostream& out) const;
};

class SolverBlowUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smooth even cutoff: 1 on [-1, 1], 0 outside [-2, 2],
/// chi(x) = h(2 - |x|) / (h(2 - |x|) + h(|x| - 1)), h(t) = exp(-1/t) for t > 0.
double cutoff(double x);
double cutoff_derivative(double x);

/// int x (|v|^2 - 1) chi_R and 2 int <i v, v_x> (x chi_R)' at one instant.
double localized_first_moment(const Field& f, double radius);
double localized_first_moment_rate(const Field& f, double radius);

/// Strang splitting for the perturbation equation
///   i w_t + w_xx = -V0_xx + (w + V0)(|w + V0|^2 - 1),
/// background held fixed: half pointwise step (classical RK4 per node), exact
/// spectral free-Schroedinger step on twisted-periodic data, half pointwise
/// step. `dt` may be negative.
class SplitStepper {
 public:
  SplitStepper(const GridSpec& grid, const Background& background, double dt);

  /// Advances the perturbation samples by one step in place.
  void advance(std::vector<cplx>& w) const;
  double dt() const { return dt_; }

 private:
  void pointwise(std::vector<cplx>& w, double h) const;

  GridSpec grid_;
  double dt_;
  double twist_;
  std::vector<cplx> background_;
  std::vector<cplx> background_xx_;
  std::vector<cplx> propagator_;
};

inline constexpr double kBlowUpThreshold = 1e3;

/// One split step. Throws on an invalid field or when max|w| exceeds 1e3.
Field step(const Field& f, double dt);

struct Trajectory {
  Field final_state;
  ConservedLog log;
};

/// Composes steps up to T, logging every `log_every` steps (and at t = 0).
/// The initial field must be valid; afterwards radiation is allowed to reach
/// the periodic boundary.
Trajectory evolve(const Field& f, const EvolveConfig& cfg);

/// Same, calling `observer(state, t)` at every logged time (t = 0 included).
/// If the solver aborts, the exception propagates after the last observation.
using EvolveObserver = std::function<void(const Field&, double)>;
Trajectory evolve(const Field& f, const EvolveConfig& cfg, const EvolveObserver& observer);

/// Max over interior log times of |centered difference of com - com_rate|.
double com_law_residual(const ConservedLog& log);
double com_law_residual(const Field& f, const EvolveConfig& cfg);

}  // namespace gplab
