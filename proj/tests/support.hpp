#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gplab/field.hpp"

namespace gplab::testing {

inline constexpr double kPi = 3.14159265358979323846;
inline const double kSqrt2 = std::sqrt(2.0);
inline const double kKinkEnergy = 2.0 * std::sqrt(2.0) / 3.0;

/// Input generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (engine_() & 1u) != 0; }

  /// Sum of `count` complex Gaussian bumps with centers in [-spread, spread].
  std::vector<cplx> bumps(const GridSpec& grid, int count, double amplitude, double spread) {
    std::vector<cplx> w(grid.n_points, cplx(0.0));
    for (int b = 0; b < count; ++b) {
      const double center = real(-spread, spread);
      const double width = real(0.7, 2.5);
      const cplx a(real(-amplitude, amplitude), real(-amplitude, amplitude));
      for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double y = (grid.x(j) - center) / width;
        w[j] += a * std::exp(-y * y);
      }
    }
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

inline double sup_norm(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace gplab::testing
