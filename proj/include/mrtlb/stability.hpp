#pragma once

// Von Neumann analysis of the four-level scheme. G is the amplification
// matrix of the populations, H the companion-form amplification matrix of the
// macroscopic scheme; both share the characteristic polynomial
//   p(lambda) = lambda^3 + p2 lambda^2 + p1 lambda + p0.

#include <array>
#include <complex>

#include <Eigen/Core>

#include "mrtlb/exec.hpp"
#include "mrtlb/fd_scheme.hpp"

namespace mrtlb {

struct CharPoly {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double theta = 0.0;
};

CharPoly char_coeffs(double omega0, double s1, double s2, double theta);

Eigen::Matrix3cd amplification_G(double omega0, double s1, double s2, double theta);

Eigen::Matrix3d amplification_H(const FdCoefficients& coeffs, double theta);

/// Roots of the monic cubic from the companion-matrix eigenvalues, each
/// refined by Newton steps on p while that reduces |p|.
std::array<std::complex<double>, 3> cubic_roots(const CharPoly& p);

/// Routh-Hurwitz quantities, positive iff all roots lie strictly inside the
/// unit disk: (1-p0+p1-p2, 1-p0, 1+p0, 1+p0+p1+p2, 1-p1+p0 p2-p0^2).
std::array<double, 5> routh_hurwitz_values(const CharPoly& p);

/// Splits the last Routh-Hurwitz value as A (1 - cos theta) + B.
struct ProofQuantities {
  double A = 0.0;
  double B = 0.0;
};

ProofQuantities proof_quantities(double omega0, double s1, double s2);

struct StabilityReport {
  int theta_samples = 0;
  double max_spectral_radius = 0.0;
  double worst_theta = 0.0;
  /// Smallest Routh-Hurwitz value over the grid; the fourth condition is
  /// skipped where cos theta rounds to 1 (it vanishes there).
  double rh_min_margin = 0.0;
  bool stable = false;
};

inline constexpr double kStabilityTolerance = 1e-10;
inline constexpr int kDefaultThetaSamples = 720;

/// Scans theta_k = -pi + 2 pi k / n_theta, k = 0..n_theta (n_theta >= 64).
StabilityReport spectral_radius_scan(double omega0, double s1, double s2,
                                     int n_theta = kDefaultThetaSamples,
                                     Exec exec = Exec::parallel);

/// Minimum Routh-Hurwitz value at one angle, with the cos theta = 1 rule above.
double routh_hurwitz_margin(const CharPoly& p);

/// max |lambda| over the roots.
double spectral_radius(const std::array<std::complex<double>, 3>& roots);

}  // namespace mrtlb
