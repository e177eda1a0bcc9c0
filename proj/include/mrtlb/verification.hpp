#pragma once

// Grid-convergence study on phi_t = kappa phi_xx over [0, 1] with
// phi(x, 0) = sin(pi x) and homogeneous Dirichlet ends.

#include <span>
#include <string>
#include <vector>

#include "mrtlb/calibration.hpp"
#include "mrtlb/exec.hpp"

namespace mrtlb {

/// sin(pi x) exp(-kappa pi^2 t).
double analytic_phi(double x, double t, double kappa);

/// sqrt(sum (a_j - b_j)^2 / N) over all entries. Throws LengthMismatch.
double rmse(std::span<const double> numerical, std::span<const double> analytic);

/// log2(rmse_coarse / rmse_fine). Throws DomainError on non-positive input.
double convergence_rate(double rmse_coarse, double rmse_fine);

/// Which grid nodes enter the RMSE of a benchmark run.
enum class RmseNodes { all, interior };

/// dt / dx^2 used for every table run.
inline constexpr double kDiffusiveRatio = 30.0;
inline constexpr double kBenchmarkEndTime = 12.0;

struct BenchmarkCase {
  double epsilon = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double kappa = 0.0;
  double t_end = kBenchmarkEndTime;
  Order order = Order::sixth;
  CalibrationResult params;

  /// dt = 30 dx^2, kappa = epsilon / 30, parameters calibrated for `order`
  /// (fourth order uses s1 = 1).
  static BenchmarkCase make(double epsilon, double dx, Order order);
};

/// Final field of a benchmark run alongside the exact solution.
struct BenchmarkField {
  std::vector<double> x;
  std::vector<double> numeric;
  std::vector<double> analytic;
};

BenchmarkField solve_benchmark(const BenchmarkCase& c, Exec exec = Exec::parallel);

/// RMSE at t_end against the analytic solution.
double run_benchmark(const BenchmarkCase& c, RmseNodes nodes = RmseNodes::all,
                     Exec exec = Exec::parallel);

struct ConvergenceRow {
  double dx = 0.0;
  double dt = 0.0;
  double rmse = 0.0;
};

struct ConvergenceReport {
  double epsilon = 0.0;
  Order order = Order::sixth;
  std::vector<ConvergenceRow> rows;  // decreasing dx
  std::vector<double> rates;         // rows.size() - 1 entries
};

inline const std::vector<double> kTableEpsilons{0.1, 0.15, 0.175, 0.2, 0.24};
inline const std::vector<double> kTableSpacings{0.1, 0.05, 0.025};

/// Runs every (epsilon, dx) case, in parallel across cases, and fits rates
/// between consecutive spacings. Output order is deterministic.
std::vector<ConvergenceReport> reproduce_table(Order order, std::span<const double> eps_list,
                                               std::span<const double> dx_list,
                                               RmseNodes nodes = RmseNodes::all);

struct Profile {
  double epsilon = 0.0;
  BenchmarkField field;
  double max_deviation = 0.0;
};

/// Sixth-order profiles at t = 12 on the given spacing.
std::vector<Profile> profile_solution(std::span<const double> eps_list, double dx = 0.025);

}  // namespace mrtlb
