#pragma once

// Mesoscopic reference: the D1Q3 multiple-relaxation-time lattice-Boltzmann
// model on a periodic grid. Used to validate the four-level scheme.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mrtlb/calibration.hpp"
#include "mrtlb/exec.hpp"
#include "mrtlb/fd_scheme.hpp"

namespace mrtlb {

/// Populations for the velocities -c, 0, +c.
struct DistributionField {
  std::vector<double> f_minus;
  std::vector<double> f_zero;
  std::vector<double> f_plus;

  std::size_t size() const { return f_zero.size(); }
};

struct LatticeMatrices {
  Eigen::Matrix3d M;
  Eigen::Matrix3d S;
  Eigen::Matrix3d M_inv;

  /// Rows of M are (1, 1, 1), (-c, 0, c), (c^2, -2c^2, c^2).
  static LatticeMatrices make(double c, const Relaxations& relax);
};

/// f_i^eq = omega_i phi, ordered (-c, 0, +c).
std::array<double, 3> equilibrium(double phi, const Weights& weights);

/// phi = sum_i f_i + dt R / 2 at every node.
std::vector<double> macro_phi(const DistributionField& f, double dt, double R);

/// f_i = omega_i (phi0 - dt R / 2), so macro_phi reproduces phi0.
DistributionField initialize(std::span<const double> phi0, const Weights& weights, double dt,
                             double R);

/// One step of the pre-substituted population update. Periodic only.
DistributionField evolve(const DistributionField& f, const ModelParams& params,
                         const BoundarySpec& boundary = Periodic{},
                         Exec exec = Exec::parallel);

/// Same step through the explicit M^-1 S M and M^-1 (I - S/2) M products.
DistributionField evolve_matrix_form(const DistributionField& f, const ModelParams& params,
                                     const BoundarySpec& boundary = Periodic{});

struct EquivalenceResult {
  double max_abs_deviation = 0.0;
  double max_abs_phi = 0.0;
  long steps_compared = 0;
};

/// Evolves the populations for `steps` steps from an equilibrium start and
/// compares every phi^{n+1}, n >= 2, with the four-level prediction from
/// (phi^{n-2}, phi^{n-1}, phi^n).
EquivalenceResult check_equivalence(std::span<const double> phi0, const ModelParams& params,
                                    long steps, Exec exec = Exec::parallel);

/// Uniform [0, 1) field from std::mt19937_64 seeded with `seed`; each draw is
/// the top 53 bits scaled by 2^-53, so the sequence is platform independent.
std::vector<double> random_field(std::size_t n, std::uint64_t seed);

}  // namespace mrtlb
