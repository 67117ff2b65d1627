#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gplab/field.hpp"

namespace gplab {

/// Raw mt19937_64 output mapped to doubles by hand: the standard distributions
/// are implementation-defined, this mapping is bit-reproducible everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  ///< [0, 1), 53 random bits
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();   ///< Box-Muller, one variate per call

 private:
  std::mt19937_64 engine_;
};

struct PerturbationSpec {
  double epsilon = 0.05;  ///< target d_A distance from the kink
  double A = 10.0;        ///< window of d_A; bump centers lie in [-A/2, A/2]
  std::uint64_t seed = 1;
  std::size_t n_bumps = 3;
  std::pair<double, double> bump_width_range{1.0, 3.0};

  void validate() const;
};

/// Unscaled complex Gaussian bumps sum_k a_k exp(-(x - x_k)^2 / (2 s_k^2)).
std::vector<cplx> seeded_bumps(const PerturbationSpec& spec, const GridSpec& grid);

/// Kink background plus s * seeded_bumps, with s chosen so that
/// d_A(v, kink) = epsilon within 1e-4 relative. epsilon = 0 gives w = 0.
/// Throws std::runtime_error when the bumps cannot reach epsilon or the result
/// has not decayed at the grid ends.
Field make_perturbed_kink(const PerturbationSpec& spec, const GridSpec& grid);

}  // namespace gplab
