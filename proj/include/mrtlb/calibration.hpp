#pragma once

// Scalar model parameters of the D1Q3 MRT lattice-Boltzmann diffusion model,
// the truncation-error residuals of its four-level finite-difference form, and
// the root finding that tunes (omega0, s1, s2) for fourth- or sixth-order
// spatial accuracy at a given mesh Fourier number.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mrtlb {

/// Equilibrium weights; omega1 is shared by the -c and +c populations.
struct Weights {
  double omega0 = 0.0;
  double omega1 = 0.0;
};

/// Builds {omega0, (1 - omega0) / 2}. Throws DomainError unless 0 < omega0 < 1.
Weights weights_from_omega0(double omega0);

/// Diagonal of the relaxation matrix. s0 never reaches the macroscopic scheme.
struct Relaxations {
  double s0 = 1.0;
  double s1 = 1.0;
  double s2 = 1.0;
};

/// Validates 0 < s1, s2 < 2 and a finite s0.
Relaxations make_relaxations(double s0, double s1, double s2);

/// Collision variants expressed as MRT rates.
Relaxations from_srt(double omega);
Relaxations from_trt(double s_plus, double s_minus);
Relaxations from_regularized(double omega);
Relaxations from_mlk(double omega, double eta);

/// A fully configured scheme. Build it with make_model_params so that the
/// diffusivity and mesh Fourier number agree with the lattice parameters.
struct ModelParams {
  double dx = 1.0;
  double dt = 1.0;
  double kappa = 0.0;
  double source_R = 0.0;
  Weights weights;
  Relaxations relax;
  double epsilon = 0.0;
};

/// Derives kappa and epsilon from the lattice parameters.
ModelParams make_model_params(double dx, double dt, double omega0,
                              const Relaxations& relax, double source_R = 0.0);

/// Throws DomainError if any field invariant of ModelParams is violated.
void validate(const ModelParams& params);

/// epsilon = (1 - omega0) * (1/s1 - 1/2).
double mesh_fourier(double omega0, double s1);

/// kappa = 2 omega1 (1/s1 - 1/2) dx^2 / dt.
double diffusivity(const ModelParams& params);

/// Coefficient of the dx^2 error term (zero for fourth-order accuracy).
double residual_second(double omega0, double s1, double s2, double epsilon);

/// Coefficient of the dx^4 error term (zero, together with residual_second,
/// for sixth-order accuracy).
double residual_fourth(double omega0, double s1, double s2, double epsilon);

enum class Order { second, fourth, sixth };

std::string_view to_string(Order order);
/// Accepts 2/4/6 or second/fourth/sixth.
Order parse_order(std::string_view text);

struct CalibrationResult {
  double epsilon = 0.0;
  double omega0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double residual_second = 0.0;
  double residual_fourth = 0.0;
  Order order = Order::second;
};

/// Convergence threshold on both residuals for a sixth-order calibration.
inline constexpr double kCalibrationTolerance = 1e-12;

/// Solves both accuracy conditions with omega0 eliminated through the mesh
/// Fourier relation. The returned root lies on the branch with
/// 0.8 <= omega0 < 1. Throws NoRealRoot past epsilon_max().
CalibrationResult calibrate_sixth(double epsilon);

/// Closed-form fourth-order parameters: omega0 from the mesh Fourier relation
/// and s2 from the (linear in s2) dx^2 condition.
CalibrationResult calibrate_fourth(double epsilon, double s1 = 1.0);

/// Plain second-order configuration s1 = s2 = 1, omega0 = 1 - 2 epsilon.
CalibrationResult calibrate_second(double epsilon);

CalibrationResult calibrate(Order order, double epsilon, double s1 = 1.0);

/// Largest mesh Fourier number for which calibrate_sixth succeeds, located by
/// bisection over (0.24, 0.30) to 1e-6 and cached after the first call.
double epsilon_max();

struct SweepRow {
  double epsilon = 0.0;
  std::optional<CalibrationResult> result;
  std::string status;  // "ok" or "no_real_root"
};

/// Sixth-order calibration over an increasing grid, each solve seeded with
/// the previous row's root.
std::vector<SweepRow> calibration_sweep(std::span<const double> eps_grid);

namespace detail {

struct Root {
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Damped 2D Newton iteration on (s1, s2); empty if it does not reach
/// kCalibrationTolerance inside the admissible box within 100 iterations.
std::optional<Root> newton_sixth(double epsilon, Root guess);

/// Partial derivatives of (residual_second, residual_fourth) with respect to
/// (s1, s2), omega0 eliminated: {dr2/ds1, dr2/ds2, dr4/ds1, dr4/ds2}.
std::array<double, 4> sixth_jacobian(double epsilon, double s1, double s2);

/// omega0 forced by the mesh Fourier relation for given (epsilon, s1).
double omega0_for(double epsilon, double s1);

}  // namespace detail

}  // namespace mrtlb
