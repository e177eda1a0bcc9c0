#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version and an
// OpenMP version producing bitwise-identical results; the rest of the library
// dispatches between them through Exec.

#include <span>

#include "mrtlb/calibration.hpp"
#include "mrtlb/exec.hpp"
#include "mrtlb/fd_scheme.hpp"

namespace mrtlb::kernels {

/// Four-level stencil on every node. `oldest_inout` holds level n-2 on entry
/// and level n+1 on exit. Periodic wraps neighbours modulo the array length;
/// otherwise the two end nodes are left untouched.
struct FourLevelArgs {
  std::span<const double> newest;
  std::span<const double> previous;
  std::span<double> oldest_inout;
  FdCoefficients coeffs;
  double source_increment = 0.0;  // delta * dt * R
  bool periodic = false;
};

/// One collide-and-stream step of the D1Q3 populations on a periodic grid,
/// pulling from j+1 for the -c population and from j-1 for the +c one.
struct LbmArgs {
  std::span<const double> f_minus;
  std::span<const double> f_zero;
  std::span<const double> f_plus;
  std::span<double> out_minus;
  std::span<double> out_zero;
  std::span<double> out_plus;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double s1 = 1.0;
  double s2 = 1.0;
  double dt = 1.0;
  double R = 0.0;
};

/// Per-angle spectral radius and Routh-Hurwitz margin over
/// theta_k = -pi + 2 pi k / n_theta, k = 0..n_theta.
struct ThetaScanArgs {
  double omega0 = 0.0;
  double s1 = 1.0;
  double s2 = 1.0;
  int n_theta = 0;
  std::span<double> radius;  // n_theta + 1 entries
  std::span<double> margin;  // n_theta + 1 entries
};

namespace serial {
void four_level(const FourLevelArgs& a);
void lbm_step(const LbmArgs& a);
void theta_scan(const ThetaScanArgs& a);
}  // namespace serial

namespace omp {
void four_level(const FourLevelArgs& a);
void lbm_step(const LbmArgs& a);
void theta_scan(const ThetaScanArgs& a);
}  // namespace omp

inline void four_level(const FourLevelArgs& a, Exec exec) {
  exec == Exec::serial ? serial::four_level(a) : omp::four_level(a);
}
inline void lbm_step(const LbmArgs& a, Exec exec) {
  exec == Exec::serial ? serial::lbm_step(a) : omp::lbm_step(a);
}
inline void theta_scan(const ThetaScanArgs& a, Exec exec) {
  exec == Exec::serial ? serial::theta_scan(a) : omp::theta_scan(a);
}

}  // namespace mrtlb::kernels
