#include "mrtlb/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mrtlb/errors.hpp"
#include "mrtlb/kernels.hpp"

namespace mrtlb {

namespace {

void require_params(double omega0, double s1, double s2) {
  weights_from_omega0(omega0);
  make_relaxations(1.0, s1, s2);
}

void require_theta(double theta) {
  if (!(std::abs(theta) <= std::numbers::pi)) throw DomainError("theta must lie in [-pi, pi]");
}

// cos(theta) == 1 up to rounding of the angle grid.
constexpr double kCosOneSlack = 1e-12;

}  // namespace

CharPoly char_coeffs(double omega0, double s1, double s2, double theta) {
  require_params(omega0, s1, s2);
  require_theta(theta);
  const double c = std::cos(theta);
  CharPoly p;
  p.theta = theta;
  p.p0 = (s1 - 1.0) * (1.0 - s2);
  p.p1 = (s1 - 1.0) * (s2 * omega0 - 1.0) +
         ((s1 - 2.0) * (s2 - 1.0) + s2 * omega0 * (1.0 - s1)) * c;
  p.p2 = s2 - s2 * omega0 - 1.0 + (s2 * omega0 + s1 - 2.0) * c;
  return p;
}

Eigen::Matrix3cd amplification_G(double omega0, double s1, double s2, double theta) {
  require_params(omega0, s1, s2);
  require_theta(theta);
  using cd = std::complex<double>;
  const cd ep = std::polar(1.0, theta);
  const cd em = std::polar(1.0, -theta);
  const double diag = 1.0 - s1 / 2.0 - omega0 * s2 / 2.0;
  const double mid = s2 / 2.0 - omega0 * s2 / 2.0;
  const double cross = s1 / 2.0 - omega0 * s2 / 2.0;
  Eigen::Matrix3cd g;
  g << diag * ep, mid * ep, cross * ep,
       cd(omega0 * s2), cd(omega0 * s2 - s2 + 1.0), cd(omega0 * s2),
       cross * em, mid * em, diag * em;
  return g;
}

Eigen::Matrix3d amplification_H(const FdCoefficients& k, double theta) {
  const double c = std::cos(theta);
  Eigen::Matrix3d h;
  h << 2.0 * k.alpha1 * c + k.alpha2, 2.0 * k.beta1 * c + k.beta2, k.gamma,
       1.0, 0.0, 0.0,
       0.0, 1.0, 0.0;
  return h;
}

namespace {

// z^2 + b z + c = 0 without cancellation in the larger root.
std::array<std::complex<double>, 2> quadratic_roots(double b, double c) {
  using cd = std::complex<double>;
  const cd disc = std::sqrt(cd(b * b - 4.0 * c));
  const cd q = -0.5 * (b + (b >= 0.0 ? disc : -disc));
  if (q == cd(0.0)) return {cd(0.0), cd(0.0)};
  return {q, c / q};
}

}  // namespace

std::array<std::complex<double>, 3> cubic_roots(const CharPoly& p) {
  using cd = std::complex<double>;
  // An exactly vanishing constant term (s1 = 1 or s2 = 1) factors out a zero
  // root; the eigensolver would smear a double zero root to ~1e-8.
  if (p.p0 == 0.0) {
    const auto q = quadratic_roots(p.p2, p.p1);
    return {cd(0.0), q[0], q[1]};
  }

  Eigen::Matrix3d companion;
  companion << -p.p2, -p.p1, -p.p0,
               1.0, 0.0, 0.0,
               0.0, 1.0, 0.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();

  auto poly = [&](cd z) { return ((z + p.p2) * z + p.p1) * z + p.p0; };
  auto dpoly = [&](cd z) { return (3.0 * z + 2.0 * p.p2) * z + p.p1; };

  std::array<cd, 3> roots{ev(0), ev(1), ev(2)};
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const cd d = dpoly(z);
      if (d == cd(0.0)) break;
      const cd trial = z - poly(z) / d;
      if (!(std::abs(poly(trial)) < std::abs(poly(z)))) break;
      z = trial;
    }
  }
  return roots;
}

std::array<double, 5> routh_hurwitz_values(const CharPoly& p) {
  return {1.0 - p.p0 + p.p1 - p.p2,
          1.0 - p.p0,
          1.0 + p.p0,
          1.0 + p.p0 + p.p1 + p.p2,
          1.0 - p.p1 + p.p0 * p.p2 - p.p0 * p.p0};
}

double routh_hurwitz_margin(const CharPoly& p) {
  const auto v = routh_hurwitz_values(p);
  const bool marginal = std::cos(p.theta) >= 1.0 - kCosOneSlack;
  double m = std::min({v[0], v[1], v[2], v[4]});
  if (!marginal) m = std::min(m, v[3]);
  return m;
}

double spectral_radius(const std::array<std::complex<double>, 3>& roots) {
  return std::max({std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])});
}

ProofQuantities proof_quantities(double omega0, double s1, double s2) {
  require_params(omega0, s1, s2);
  return {s1 * (1.0 - s2) * (2.0 - s1) + omega0 * s2 * (1.0 - s1) * (2.0 - s2),
          s1 * s2 * (s1 + s2 - s1 * s2)};
}

StabilityReport spectral_radius_scan(double omega0, double s1, double s2, int n_theta,
                                     Exec exec) {
  require_params(omega0, s1, s2);
  if (n_theta < 64) throw DomainError("n_theta must be at least 64");

  std::vector<double> radius(static_cast<std::size_t>(n_theta) + 1);
  std::vector<double> margin(radius.size());
  kernels::theta_scan({omega0, s1, s2, n_theta, radius, margin}, exec);

  StabilityReport report;
  report.theta_samples = n_theta;
  report.max_spectral_radius = -1.0;
  report.rh_min_margin = margin.front();
  for (std::size_t k = 0; k < radius.size(); ++k) {
    if (radius[k] > report.max_spectral_radius) {
      report.max_spectral_radius = radius[k];
      report.worst_theta = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                   n_theta;
    }
    report.rh_min_margin = std::min(report.rh_min_margin, margin[k]);
  }
  report.stable = report.max_spectral_radius <= 1.0 + kStabilityTolerance;
  return report;
}

}  // namespace mrtlb
