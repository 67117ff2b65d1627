#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gplab/profiles.hpp"

namespace gplab {

/// Compactly supported phase-winding map w on [0, ell] carrying momentum q:
///   w = rho exp(-+ i psi), rho^2 = 1 - delta - f, both tents rescaled by
///   lambda = 1 / (8 |q|), ell = 2 lambda, delta = min(mu^2, 1 / lambda).
struct WindingMap {
  double ell = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double spacing = 0.0;
  std::vector<cplx> samples;  ///< resolution + 1 nodes s_j = j * spacing
  double momentum = 0.0;      ///< discrete (1/2) int |w|^2 psi'
  double energy = 0.0;        ///< discrete Ginzburg-Landau energy on [0, ell]
};

/// Requires 0 < |q| <= 1/32, 0 <= mu <= 1/4 and resolution >= 8 intervals.
WindingMap winding_insert(double q, double mu, std::size_t resolution);

/// (1/2) sum_j h <i w_mid, (w_{j+1} - w_j) / h>, second-order accurate.
double discrete_winding_momentum(std::span<const cplx> samples, double spacing);

/// sum_j h [ |w_{j+1} - w_j|^2 / (2 h^2) + trapezoid of (1 - |w|^2)^2 / 4 ].
double discrete_open_energy(std::span<const cplx> samples, double spacing);

}  // namespace gplab
