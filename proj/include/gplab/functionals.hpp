#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gplab/field.hpp"

namespace gplab {

/// Untwisted momentum [p](V0 + w) = [p](V0) + relative_P  (mod pi), with
/// relative_P = (1/2) int <i w, w'> + int <i w, V0'>.
struct MomentumValue {
  double untwisted = 0.0;   ///< representative in (-pi/2, pi/2]
  double relative_P = 0.0;  ///< definite-integral part
  double lifted = 0.0;      ///< real lift: analytic lift of [p](V0) plus relative_P
};

/// Whether a functional enforces the boundary-decay precondition. Trajectory
/// logging uses `kSkip` because radiation may reach the periodic boundary.
enum class DecayCheck { kEnforce, kSkip };

/// Real scalar product on C viewed as R^2: <a, b> = Re(a conj(b)).
inline double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// Ginzburg-Landau energy: (1/2) int |v'|^2 + (1/4) int (1 - |v|^2)^2.
/// Periodic rectangle rule on the grid plus the background tails beyond +-L.
double energy(const Field& f, DecayCheck check = DecayCheck::kEnforce);

/// Pointwise energy density e(v) at the grid nodes.
std::vector<double> energy_density(const Field& f);

/// m(v) = (1/2) int (|v|^2 - 1).
double mass(const Field& f, DecayCheck check = DecayCheck::kEnforce);

MomentumValue untwisted_momentum(const Field& f, DecayCheck check = DecayCheck::kEnforce);

/// p(v) = (1/2) int (rho^2 - 1) phi' for a non-vanishing field, from the
/// phase gradient phi' = <i v, v'> / |v|^2. Throws if v vanishes at a node.
double renormalized_momentum(const Field& f);

/// d_{A}(u, v) = sup_{|x| <= A} |u - v| + ||u' - v'||_{L^2} + || |u| - |v| ||_{L^2}.
/// The two L^2 terms run over the whole grid.
double distance_dA(const Field& u, const Field& v, double window);

/// Same metric on raw samples and derivative samples sharing one grid.
double distance_dA_samples(const GridSpec& grid, std::span<const cplx> u,
                           std::span<const cplx> du, std::span<const cplx> v,
                           std::span<const cplx> dv, double window);

/// Per-node slack of |(rho^2 - 1) phi'| <= sqrt(2) e(v) / rho, i.e. the value
/// max_j (|(rho^2 - 1) phi'| - sqrt(2) e / rho). Requires min |v| > 0.
double pointwise_momentum_bound_excess(const Field& f);

/// min |v| - E(v) / (sqrt(2) |p(v)|) for a non-vanishing field; p = 0 gives -inf.
double min_modulus_bound_excess(const Field& f);

struct DipCluster {
  double left = 0.0;   ///< first raw point - 1
  double right = 0.0;  ///< last raw point + 1
  std::vector<double> points;
};

struct DipReport {
  std::vector<double> points;  ///< nodes with |1 - |v|| >= delta0
  std::vector<DipCluster> clusters;
  double r0 = 0.0;
  double mu0 = 0.0;
  double ell0 = 0.0;               ///< 2 E / mu0
  std::size_t cluster_bound = 0;   ///< ceil(ell0)
};

/// Finds the nodes where |v| departs from 1 by at least delta0 and groups them
/// into clusters (raw points closer than 2 are merged). The count bound uses
/// r0 = min(delta0^2 / (8E), 1/2), mu0 = r0 delta0^2 / 8, ell0 = 2E / mu0.
DipReport locate_dips(const Field& f, double delta0, double energy_bound);

}  // namespace gplab
