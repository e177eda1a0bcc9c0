#include "mrtlb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "mrtlb/stability.hpp"

namespace mrtlb::kernels {

namespace {

using Index = std::ptrdiff_t;

inline double four_level_node(const FourLevelArgs& a, Index left, Index j, Index right) {
  const auto& k = a.coeffs;
  return k.alpha1 * (a.newest[left] + a.newest[right]) + k.alpha2 * a.newest[j] +
         k.beta1 * (a.previous[left] + a.previous[right]) + k.beta2 * a.previous[j] +
         k.gamma * a.oldest_inout[j] + a.source_increment;
}

// Only node j of oldest_inout is read when writing node j, so the update is
// safe in place and in any order.
inline void four_level_ends(const FourLevelArgs& a) {
  const Index n = static_cast<Index>(a.newest.size());
  if (!a.periodic || n == 0) return;
  if (n == 1) {
    a.oldest_inout[0] = four_level_node(a, 0, 0, 0);
    return;
  }
  a.oldest_inout[0] = four_level_node(a, n - 1, 0, 1);
  a.oldest_inout[n - 1] = four_level_node(a, n - 2, n - 1, 0);
}

inline void lbm_node(const LbmArgs& a, Index jm, Index j, Index jp) {
  const double half_source = 0.5 * a.dt * a.R;
  auto phi = [&](Index k) { return a.f_minus[k] + a.f_zero[k] + a.f_plus[k] + half_source; };
  const double side_source = (a.omega1 + a.omega0 * a.s2 / 4.0) * a.dt * a.R;

  a.out_minus[j] = a.f_minus[jp] - a.s1 / 2.0 * (a.f_minus[jp] - a.f_plus[jp]) +
                   a.s2 / 2.0 * a.f_zero[jp] - a.omega0 * a.s2 / 2.0 * phi(jp) + side_source;
  a.out_zero[j] = a.f_zero[j] - a.s2 * a.f_zero[j] + a.omega0 * a.s2 * phi(j) +
                  a.omega0 * (1.0 - a.s2 / 2.0) * a.dt * a.R;
  a.out_plus[j] = a.f_plus[jm] + a.s1 / 2.0 * (a.f_minus[jm] - a.f_plus[jm]) +
                  a.s2 / 2.0 * a.f_zero[jm] - a.omega0 * a.s2 / 2.0 * phi(jm) + side_source;
}

inline void lbm_ends(const LbmArgs& a) {
  const Index n = static_cast<Index>(a.f_zero.size());
  if (n == 0) return;
  lbm_node(a, n - 1, 0, n > 1 ? 1 : 0);
  if (n > 1) lbm_node(a, n - 2, n - 1, 0);
}

inline void theta_node(const ThetaScanArgs& a, Index k) {
  const double theta = std::clamp(-std::numbers::pi + 2.0 * std::numbers::pi *
                                                          static_cast<double>(k) / a.n_theta,
                                  -std::numbers::pi, std::numbers::pi);
  const CharPoly p = char_coeffs(a.omega0, a.s1, a.s2, theta);
  a.radius[k] = spectral_radius(cubic_roots(p));
  a.margin[k] = routh_hurwitz_margin(p);
}

}  // namespace

namespace serial {

void four_level(const FourLevelArgs& a) {
  const Index n = static_cast<Index>(a.newest.size());
  for (Index j = 1; j < n - 1; ++j) a.oldest_inout[j] = four_level_node(a, j - 1, j, j + 1);
  four_level_ends(a);
}

void lbm_step(const LbmArgs& a) {
  const Index n = static_cast<Index>(a.f_zero.size());
  for (Index j = 1; j < n - 1; ++j) lbm_node(a, j - 1, j, j + 1);
  lbm_ends(a);
}

void theta_scan(const ThetaScanArgs& a) {
  for (Index k = 0; k <= a.n_theta; ++k) theta_node(a, k);
}

}  // namespace serial

namespace omp {

void four_level(const FourLevelArgs& a) {
  const Index n = static_cast<Index>(a.newest.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index j = 1; j < n - 1; ++j) a.oldest_inout[j] = four_level_node(a, j - 1, j, j + 1);
  four_level_ends(a);
}

void lbm_step(const LbmArgs& a) {
  const Index n = static_cast<Index>(a.f_zero.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index j = 1; j < n - 1; ++j) lbm_node(a, j - 1, j, j + 1);
  lbm_ends(a);
}

void theta_scan(const ThetaScanArgs& a) {
  const Index n = a.n_theta;
#pragma omp parallel for schedule(static) if (n >= 256)
  for (Index k = 0; k <= n; ++k) theta_node(a, k);
}

}  // namespace omp

}  // namespace mrtlb::kernels
