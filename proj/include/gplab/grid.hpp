#pragma once

#include <cstddef>
#include <vector>

namespace gplab {

/// Uniform periodic grid on [-L, L) with N nodes x_j = -L + j dx.
struct GridSpec {
  double half_length = 0.0;
  std::size_t n_points = 0;

  /// Validating constructor: L > 0, N >= 8 and a power of two.
  static GridSpec make(double half_length, std::size_t n_points);

  double dx() const { return 2.0 * half_length / static_cast<double>(n_points); }
  double x(std::size_t j) const { return -half_length + static_cast<double>(j) * dx(); }
  std::vector<double> nodes() const;

  /// Index of the node at x = 0.
  std::size_t center_index() const { return n_points / 2; }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace gplab
