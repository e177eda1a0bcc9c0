#include "mrtlb/lbm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/LU>

#include "mrtlb/errors.hpp"
#include "mrtlb/kernels.hpp"

namespace mrtlb {

namespace {

void require_periodic(const BoundarySpec& boundary) {
  if (!is_periodic(boundary)) {
    throw UnsupportedBoundary("the lattice-Boltzmann reference supports periodic grids only");
  }
}

void require_consistent(const DistributionField& f) {
  if (f.f_minus.size() != f.size() || f.f_plus.size() != f.size()) {
    throw LengthMismatch("population arrays differ in length");
  }
}

DistributionField sized_like(const DistributionField& f) {
  const std::size_t n = f.size();
  return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
}

}  // namespace

LatticeMatrices LatticeMatrices::make(double c, const Relaxations& relax) {
  LatticeMatrices m;
  m.M << 1.0, 1.0, 1.0,
         -c, 0.0, c,
         c * c, -2.0 * c * c, c * c;
  m.S = Eigen::Vector3d(relax.s0, relax.s1, relax.s2).asDiagonal();
  m.M_inv = m.M.inverse();
  return m;
}

std::array<double, 3> equilibrium(double phi, const Weights& w) {
  return {w.omega1 * phi, w.omega0 * phi, w.omega1 * phi};
}

std::vector<double> macro_phi(const DistributionField& f, double dt, double R) {
  require_consistent(f);
  std::vector<double> phi(f.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    phi[j] = f.f_minus[j] + f.f_zero[j] + f.f_plus[j] + 0.5 * dt * R;
  }
  return phi;
}

DistributionField initialize(std::span<const double> phi0, const Weights& weights, double dt,
                             double R) {
  DistributionField f;
  f.f_minus.reserve(phi0.size());
  f.f_zero.reserve(phi0.size());
  f.f_plus.reserve(phi0.size());
  for (double phi : phi0) {
    const auto eq = equilibrium(phi - 0.5 * dt * R, weights);
    f.f_minus.push_back(eq[0]);
    f.f_zero.push_back(eq[1]);
    f.f_plus.push_back(eq[2]);
  }
  return f;
}

DistributionField evolve(const DistributionField& f, const ModelParams& params,
                         const BoundarySpec& boundary, Exec exec) {
  require_periodic(boundary);
  require_consistent(f);
  validate(params);
  DistributionField out = sized_like(f);
  kernels::LbmArgs args{f.f_minus, f.f_zero, f.f_plus, out.f_minus, out.f_zero, out.f_plus,
                        params.weights.omega0, params.weights.omega1, params.relax.s1,
                        params.relax.s2, params.dt, params.source_R};
  kernels::lbm_step(args, exec);
  return out;
}

DistributionField evolve_matrix_form(const DistributionField& f, const ModelParams& params,
                                     const BoundarySpec& boundary) {
  require_periodic(boundary);
  require_consistent(f);
  validate(params);
  const double c = params.dx / params.dt;
  const auto lm = LatticeMatrices::make(c, params.relax);
  const Eigen::Matrix3d collide = lm.M_inv * lm.S * lm.M;
  const Eigen::Matrix3d forcing =
      lm.M_inv * (Eigen::Matrix3d::Identity() - 0.5 * lm.S) * lm.M;
  const auto w = params.weights;
  const Eigen::Vector3d source = Eigen::Vector3d(w.omega1, w.omega0, w.omega1) * params.source_R;

  const std::size_t n = f.size();
  std::vector<Eigen::Vector3d> post(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Vector3d fj(f.f_minus[j], f.f_zero[j], f.f_plus[j]);
    const double phi = fj.sum() + 0.5 * params.dt * params.source_R;
    const auto eq = equilibrium(phi, w);
    const Eigen::Vector3d feq(eq[0], eq[1], eq[2]);
    post[j] = fj - collide * (fj - feq) + params.dt * forcing * source;
  }

  DistributionField out = sized_like(f);
  for (std::size_t j = 0; j < n; ++j) {
    out.f_minus[j] = post[(j + 1) % n](0);
    out.f_zero[j] = post[j](1);
    out.f_plus[j] = post[(j + n - 1) % n](2);
  }
  return out;
}

EquivalenceResult check_equivalence(std::span<const double> phi0, const ModelParams& params,
                                    long steps, Exec exec) {
  validate(params);
  if (steps < 3) throw DomainError("equivalence needs at least three steps");
  const auto coeffs = coefficients(params.weights.omega0, params.relax.s1, params.relax.s2);
  const double dt = params.dt;
  const double R = params.source_R;

  EquivalenceResult result;
  auto f = initialize(phi0, params.weights, dt, R);
  PhiHistory history(phi0.size(), dt);
  std::vector<double> predicted(phi0.size());
  for (long n = 0; n <= steps; ++n) {
    const auto phi = macro_phi(f, dt, R);
    for (double v : phi) result.max_abs_phi = std::max(result.max_abs_phi, std::abs(v));
    if (history.populated() < 3) {
      history.seed(phi);
    } else {
      // Four-level prediction of level n from the LB levels n-3, n-2, n-1.
      const auto oldest = history.level(2);
      std::copy(oldest.begin(), oldest.end(), predicted.begin());
      kernels::four_level({history.level(0), history.level(1), predicted, coeffs,
                           coeffs.delta * dt * R, /*periodic=*/true},
                          exec);
      for (std::size_t j = 0; j < phi.size(); ++j) {
        result.max_abs_deviation =
            std::max(result.max_abs_deviation, std::abs(predicted[j] - phi[j]));
      }
      ++result.steps_compared;
      history.advance([&](std::span<const double>, std::span<const double>,
                          std::span<double> out) { std::copy(phi.begin(), phi.end(), out.begin()); });
    }
    if (n < steps) f = evolve(f, params, Periodic{}, exec);
  }
  return result;
}

std::vector<double> random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return out;
}

}  // namespace mrtlb
