#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "mrtlb/calibration.hpp"
#include "mrtlb/errors.hpp"
#include "mrtlb/fd_scheme.hpp"
#include "mrtlb/stability.hpp"

using namespace mrtlb;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Greedy matching; fine for three roots at these tolerances.
double multiset_distance(std::vector<cd> a, std::vector<cd> b) {
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cd p, cd q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

std::vector<cd> eig(const Eigen::Matrix3cd& m) {
  const Eigen::Vector3cd v = Eigen::ComplexEigenSolver<Eigen::Matrix3cd>(m).eigenvalues();
  return {v(0), v(1), v(2)};
}

std::vector<cd> as_vec(const std::array<cd, 3>& r) { return {r.begin(), r.end()}; }

struct Sample {
  double omega0, s1, s2, theta;
};

Sample random_sample(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> w(0.01, 0.99), s(0.01, 1.99), t(-kPi, kPi);
  return {w(gen), s(gen), s(gen), t(gen)};
}

}  // namespace

TEST(CharCoeffs, Examples) {
  const auto a = char_coeffs(0.8, 1.0, 1.0, 0.0);
  EXPECT_NEAR(a.p0, 0.0, 1e-16);
  EXPECT_NEAR(a.p1, 0.0, 1e-16);
  EXPECT_NEAR(a.p2, -1.0, 1e-15);
  const auto b = char_coeffs(0.8, 1.0, 1.0, kPi);
  EXPECT_NEAR(b.p0, 0.0, 1e-16);
  EXPECT_NEAR(b.p1, 0.0, 1e-16);
  EXPECT_NEAR(b.p2, -0.6, 1e-15);
  // Two-level central scheme amplification at eps = 0.1.
  EXPECT_NEAR(-b.p2, 1.0 - 2.0 * 0.1 * (1.0 - std::cos(kPi)), 1e-15);
  EXPECT_THROW(char_coeffs(0.8, 2.5, 1.0, 0.0), DomainError);
  EXPECT_THROW(char_coeffs(1.2, 1.0, 1.0, 0.0), DomainError);
}

TEST(CharCoeffs, MatchesCompanionMatrixOfScheme) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_sample(gen);
    const auto p = char_coeffs(s.omega0, s.s1, s.s2, s.theta);
    const auto H = amplification_H(coefficients(s.omega0, s.s1, s.s2), s.theta);
    EXPECT_NEAR(p.p2, -H(0, 0), 1e-14);
    EXPECT_NEAR(p.p1, -H(0, 1), 1e-14);
    EXPECT_NEAR(p.p0, -H(0, 2), 1e-14);
    // Independent expansion of det(lambda I - H) at lambda = 2.
    const double det = (2.0 * Eigen::Matrix3d::Identity() - H).determinant();
    EXPECT_NEAR(det, 8.0 + 4.0 * p.p2 + 2.0 * p.p1 + p.p0, 1e-12);
  }
}

TEST(AmplificationH, DegenerateCase) {
  const auto H = amplification_H(coefficients(0.8, 1.0, 1.0), 0.0);
  EXPECT_NEAR(H(0, 0), 1.0, 1e-15);
  EXPECT_EQ(H(0, 1), 0.0);
  EXPECT_EQ(H(0, 2), 0.0);
  EXPECT_EQ(H(1, 0), 1.0);
  EXPECT_EQ(H(2, 1), 1.0);
}

TEST(AmplificationG, TraceAndConservedMode) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_sample(gen);
    const auto G = amplification_G(s.omega0, s.s1, s.s2, s.theta);
    const auto p = char_coeffs(s.omega0, s.s1, s.s2, s.theta);
    EXPECT_NEAR(G.trace().real(), -p.p2, 1e-14);
    EXPECT_NEAR(G.trace().imag(), 0.0, 1e-14);
    const auto G0 = amplification_G(s.omega0, s.s1, s.s2, 0.0);
    // Columns sum to one (mass conservation) and the equilibrium populations
    // are a fixed point at zero wavenumber.
    const Eigen::RowVector3cd ones = Eigen::RowVector3cd::Ones();
    EXPECT_LE((ones * G0 - ones).cwiseAbs().maxCoeff(), 1e-14);
    const double w1 = (1.0 - s.omega0) / 2.0;
    const Eigen::Vector3cd eq(w1, s.omega0, w1);
    EXPECT_LE((G0 * eq - eq).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Spectra, GAndHAndRootsAgree) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_sample(gen);
    const auto roots = as_vec(cubic_roots(char_coeffs(s.omega0, s.s1, s.s2, s.theta)));
    const auto g = eig(amplification_G(s.omega0, s.s1, s.s2, s.theta));
    const auto H = amplification_H(coefficients(s.omega0, s.s1, s.s2), s.theta);
    const auto h = eig(H.cast<cd>());
    EXPECT_LE(multiset_distance(g, roots), 1e-12) << i;
    EXPECT_LE(multiset_distance(h, roots), 1e-12) << i;
  }
}

TEST(CubicRoots, Examples) {
  const auto a = as_vec(cubic_roots({0.0, 0.0, -1.0, 0.0}));
  EXPECT_LE(multiset_distance(a, {1.0, 0.0, 0.0}), 1e-12);
  const auto b = as_vec(cubic_roots({0.0, 0.0, -0.6, 0.0}));
  EXPECT_LE(multiset_distance(b, {0.6, 0.0, 0.0}), 1e-12);
}

TEST(CubicRoots, RecoversKnownRoots) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<cd> r;
    if (i % 2) {
      r = {u(gen), u(gen), u(gen)};
    } else {
      const cd z(u(gen), u(gen));
      r = {u(gen), z, std::conj(z)};
    }
    // lambda^3 + p2 lambda^2 + p1 lambda + p0 from the roots.
    const cd p2 = -(r[0] + r[1] + r[2]);
    const cd p1 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    const cd p0 = -r[0] * r[1] * r[2];
    const auto got = as_vec(cubic_roots({p0.real(), p1.real(), p2.real(), 0.0}));
    const double spread = std::min({std::abs(r[0] - r[1]), std::abs(r[0] - r[2]),
                                    std::abs(r[1] - r[2])});
    if (spread < 1e-3) continue;  // near-double roots lose half the digits
    EXPECT_LE(multiset_distance(got, r), 1e-10) << i;
    for (const auto& l : got) {
      const cd val = l * l * l + p2.real() * l * l + p1.real() * l + p0.real();
      EXPECT_LE(std::abs(val), 1e-10 * (1.0 + std::pow(std::abs(l), 3)));
    }
  }
}

TEST(RouthHurwitz, HandExample) {
  const auto v = routh_hurwitz_values({0.0, 0.0, -0.6, 0.0});
  const std::array<double, 5> expect{1.6, 1.0, 1.0, 0.4, 1.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(v[i], expect[i], 1e-15);
}

TEST(RouthHurwitz, FourthValueVanishesAtZeroWavenumber) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_sample(gen);
    const auto v = routh_hurwitz_values(char_coeffs(s.omega0, s.s1, s.s2, 0.0));
    // Exact in real arithmetic; the sum of rounded terms leaves a few ulps.
    EXPECT_NEAR(v[3], 0.0, 1e-15);
    // Factored form s2 (1 - cos theta)(2 - s1)(1 - omega0) at theta.
    const auto w = routh_hurwitz_values(char_coeffs(s.omega0, s.s1, s.s2, s.theta));
    EXPECT_NEAR(w[3], s.s2 * (1 - std::cos(s.theta)) * (2 - s.s1) * (1 - s.omega0), 1e-14);
  }
}

TEST(RouthHurwitz, AllPositiveAwayFromZeroWavenumber) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_sample(gen);
    if (std::cos(s.theta) >= 1.0 - 1e-12) continue;
    const auto v = routh_hurwitz_values(char_coeffs(s.omega0, s.s1, s.s2, s.theta));
    for (double x : v) EXPECT_GT(x, 0.0) << i;
  }
}

TEST(ProofQuantities, IdentityAndSigns) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_sample(gen);
    const auto q = proof_quantities(s.omega0, s.s1, s.s2);
    EXPECT_GT(q.B, 0.0);
    std::uniform_real_distribution<double> t(-kPi, kPi);
    for (int k = 0; k < 20; ++k) {
      const double theta = t(gen);
      const auto v = routh_hurwitz_values(char_coeffs(s.omega0, s.s1, s.s2, theta));
      EXPECT_NEAR(v[4], q.A * (1 - std::cos(theta)) + q.B, 1e-13);
    }
  }
  const auto unit = proof_quantities(0.4, 1.0, 1.0);
  EXPECT_NEAR(unit.A, 0.0, 1e-16);
  EXPECT_NEAR(unit.B, 1.0, 1e-16);
}

TEST(SpectralScan, TableRowIsStable) {
  const auto c = calibrate_sixth(0.1);
  const auto r = spectral_radius_scan(c.omega0, c.s1, c.s2);
  EXPECT_EQ(r.theta_samples, 720);
  EXPECT_LE(r.max_spectral_radius, 1.0 + 1e-10);
  EXPECT_TRUE(r.stable);
  EXPECT_GE(r.rh_min_margin, 0.0);
}

TEST(SpectralScan, ConservedModeAtZero) {
  const auto r = spectral_radius_scan(0.8, 1.0, 1.0, 720);
  EXPECT_NEAR(r.max_spectral_radius, 1.0, 1e-12);
  EXPECT_NEAR(r.worst_theta, 0.0, 1e-12);
  EXPECT_THROW(spectral_radius_scan(0.8, 1.0, 1.0, 32), DomainError);
}

namespace {

double max_adjacent_jump(double omega0, double s1, double s2, int n) {
  double prev = -1.0, worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double theta = -kPi + 2.0 * kPi * k / n;
    const double rad = spectral_radius(cubic_roots(char_coeffs(omega0, s1, s2, theta)));
    if (prev >= 0.0) worst = std::max(worst, std::abs(rad - prev));
    prev = rad;
  }
  return worst;
}

}  // namespace

TEST(SpectralScan, RandomTriplesAreStableUnderRefinement) {
  // Where two real roots merge into a complex pair the radius has a square-root
  // cusp, so adjacent samples can differ by a few percent. A four times finer
  // grid must still find no excursion above one.
  std::mt19937_64 gen(10);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_sample(gen);
    const auto r = spectral_radius_scan(s.omega0, s.s1, s.s2, 720);
    EXPECT_TRUE(r.stable) << i;
    EXPECT_GT(r.rh_min_margin, 0.0) << i;
    const auto fine = spectral_radius_scan(s.omega0, s.s1, s.s2, 2880);
    EXPECT_TRUE(fine.stable) << i;
    EXPECT_LE(fine.max_spectral_radius, 1.0 + kStabilityTolerance);
  }
}

TEST(SpectralScan, AdjacentJumpsShrinkUnderRefinement) {
  // The largest cusp among 300 random triples. At 720 samples the jump exceeds
  // 0.01; refinement reduces it until the grid resolves the cusp.
  const double w = 0.8019740167772967, s1 = 0.9779151515359347, s2 = 1.967616760068283;
  const double j720 = max_adjacent_jump(w, s1, s2, 720);
  const double j2880 = max_adjacent_jump(w, s1, s2, 2880);
  const double j23040 = max_adjacent_jump(w, s1, s2, 23040);
  EXPECT_GT(j720, 0.01);
  EXPECT_LT(j2880, j720);
  EXPECT_LT(j23040, 0.01);
}

TEST(SpectralScan, SerialAndParallelAgree) {
  const auto a = spectral_radius_scan(0.3, 1.7, 0.4, 1440, Exec::serial);
  const auto b = spectral_radius_scan(0.3, 1.7, 0.4, 1440, Exec::parallel);
  EXPECT_EQ(a.max_spectral_radius, b.max_spectral_radius);
  EXPECT_EQ(a.worst_theta, b.worst_theta);
  EXPECT_EQ(a.rh_min_margin, b.rh_min_margin);
}
