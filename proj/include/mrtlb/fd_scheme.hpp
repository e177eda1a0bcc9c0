#pragma once

// Explicit four-level finite-difference form of the D1Q3 MRT model:
//
//   phi_j^{n+1} = a1 (phi_{j-1}^n + phi_{j+1}^n) + a2 phi_j^n
//               + b1 (phi_{j-1}^{n-1} + phi_{j+1}^{n-1}) + b2 phi_j^{n-1}
//               + g phi_j^{n-2} + d dt R

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "mrtlb/calibration.hpp"
#include "mrtlb/exec.hpp"

namespace mrtlb {

struct FdCoefficients {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  /// 2 alpha1 + alpha2 + 2 beta1 + beta2 + gamma; equals 1 for any valid set.
  double weight_sum() const { return 2.0 * alpha1 + alpha2 + 2.0 * beta1 + beta2 + gamma; }
};

FdCoefficients coefficients(double omega0, double s1, double s2);

/// Single-relaxation-time special case parameterized by Omega = 1 - omega.
/// delta is omega^2, the general formula with s1 = s2 = omega.
FdCoefficients srt_coefficients(double omega, double omega1);

struct Dirichlet {
  double left = 0.0;
  double right = 0.0;
};
struct Periodic {};
using BoundarySpec = std::variant<Dirichlet, Periodic>;

inline bool is_periodic(const BoundarySpec& b) { return std::holds_alternative<Periodic>(b); }

/// Uniform grid on [x0, x0 + length]. Dirichlet fields store all
/// n_intervals + 1 nodes; periodic fields store n_intervals nodes, the right
/// end being the image of node 0.
struct Grid1D {
  int n_intervals = 0;
  double dx = 0.0;
  double x0 = 0.0;
  double length = 0.0;

  static Grid1D uniform(int n_intervals, double length, double x0 = 0.0);
  /// Grid whose spacing is dx; length / dx must be an integer to 1e-9.
  static Grid1D from_spacing(double dx, double length, double x0 = 0.0);

  double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
  std::size_t node_count(const BoundarySpec& boundary) const;
  std::vector<double> nodes(const BoundarySpec& boundary) const;
};

/// The three most recent time levels held in a rotating 3-slot buffer.
class PhiHistory {
 public:
  PhiHistory(std::size_t n_nodes, double dt);

  /// Appends the next time level while fewer than three are populated.
  void seed(std::span<const double> level);

  std::size_t populated() const { return populated_; }
  /// Time index n of the newest level; -1 before any level is seeded.
  long step_index() const { return step_index_; }
  double dt() const { return dt_; }
  std::size_t size() const { return slots_[0].size(); }

  /// age 0 = level n, 1 = level n-1, 2 = level n-2.
  std::span<const double> level(int age) const;

  /// Overwrites the oldest slot with the result of `update` and makes it the
  /// newest. The callback receives (newest, previous, oldest_inout).
  template <class Update>
  void advance(Update&& update);

 private:
  std::size_t slot_of(int age) const;

  std::array<std::vector<double>, 3> slots_;
  std::size_t newest_ = 2;
  std::size_t populated_ = 0;
  long step_index_ = -1;
  double dt_;
};

template <class Update>
void PhiHistory::advance(Update&& update) {
  const std::size_t oldest = slot_of(2);
  update(std::span<const double>(slots_[slot_of(0)]), std::span<const double>(slots_[slot_of(1)]),
         std::span<double>(slots_[oldest]));
  newest_ = oldest;
  ++step_index_;
}

/// Advances one time level in place and returns the new level.
/// Throws StateError unless three levels are populated.
std::span<const double> step(PhiHistory& history, const FdCoefficients& coeffs, double R,
                             const BoundarySpec& boundary, Exec exec = Exec::parallel);

/// Applies `step` n_steps times.
void advance(PhiHistory& history, const FdCoefficients& coeffs, double R,
             const BoundarySpec& boundary, long n_steps, Exec exec = Exec::parallel);

/// Number of steps of size dt that reach t_end; throws DomainError unless
/// t_end is an integer multiple of dt within 1e-9 relative.
long aligned_steps(double t_end, double dt);

using Initializer = std::function<double(double x, double t)>;

/// Seeds levels t = 0, dt, 2 dt from `initializer`, then steps up to t_end.
/// t_end = 2 dt returns the third seed unchanged.
std::vector<double> run(const ModelParams& params, const Grid1D& grid,
                        const Initializer& initializer, const BoundarySpec& boundary,
                        double t_end, Exec exec = Exec::parallel);

/// Startup for problems without an analytic solution: levels dt and 2 dt are
/// produced by the two-level scheme at the same epsilon, four sub-steps per dt.
/// Only second-order accurate in time.
PhiHistory bootstrap(const ModelParams& params, const Grid1D& grid,
                     std::span<const double> phi0, const BoundarySpec& boundary);

}  // namespace mrtlb
