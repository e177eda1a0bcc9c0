#include "mrtlb/fd_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrtlb/errors.hpp"
#include "mrtlb/kernels.hpp"

namespace mrtlb {

FdCoefficients coefficients(double omega0, double s1, double s2) {
  weights_from_omega0(omega0);
  make_relaxations(1.0, s1, s2);
  FdCoefficients k;
  k.alpha1 = 1.0 - s1 / 2.0 - omega0 * s2 / 2.0;
  k.alpha2 = (omega0 - 1.0) * s2 + 1.0;
  k.beta1 = omega0 * s1 * s2 / 2.0 - s1 * s2 / 2.0 - omega0 * s2 / 2.0 + s1 / 2.0 + s2 - 1.0;
  k.beta2 = -omega0 * s1 * s2 + omega0 * s2 + s1 - 1.0;
  k.gamma = (s1 - 1.0) * (s2 - 1.0);
  k.delta = s1 * s2;
  return k;
}

FdCoefficients srt_coefficients(double omega, double omega1) {
  make_relaxations(omega, omega, omega);
  weights_from_omega0(1.0 - 2.0 * omega1);
  const double big = 1.0 - omega;
  FdCoefficients k;
  k.alpha1 = big + omega1 * omega;
  k.alpha2 = big + (1.0 - 2.0 * omega1) * omega;
  k.beta1 = -(big + (1.0 - omega1) * omega) * big;
  k.beta2 = -(big + 2.0 * omega1 * omega) * big;
  k.gamma = big * big;
  k.delta = omega * omega;
  return k;
}

Grid1D Grid1D::uniform(int n_intervals, double length, double x0) {
  if (n_intervals <= 0) throw DomainError("grid needs at least one interval");
  if (!(length > 0.0)) throw DomainError("grid length must be positive");
  return {n_intervals, length / n_intervals, x0, length};
}

Grid1D Grid1D::from_spacing(double dx, double length, double x0) {
  if (!(dx > 0.0) || !(length > 0.0)) throw DomainError("dx and length must be positive");
  const double ratio = length / dx;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(n - ratio) > 1e-9 * ratio) {
    throw DomainError("length is not an integer multiple of dx");
  }
  return uniform(static_cast<int>(n), length, x0);
}

std::size_t Grid1D::node_count(const BoundarySpec& boundary) const {
  return static_cast<std::size_t>(n_intervals) + (is_periodic(boundary) ? 0 : 1);
}

std::vector<double> Grid1D::nodes(const BoundarySpec& boundary) const {
  std::vector<double> xs(node_count(boundary));
  for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = x(j);
  return xs;
}

PhiHistory::PhiHistory(std::size_t n_nodes, double dt) : dt_(dt) {
  if (n_nodes == 0) throw DomainError("history needs at least one node");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  for (auto& s : slots_) s.assign(n_nodes, 0.0);
}

void PhiHistory::seed(std::span<const double> level) {
  if (populated_ == 3) throw StateError("history already holds three levels");
  if (level.size() != size()) throw LengthMismatch("seed level has the wrong length");
  newest_ = (newest_ + 1) % 3;
  std::copy(level.begin(), level.end(), slots_[newest_].begin());
  ++populated_;
  ++step_index_;
}

std::size_t PhiHistory::slot_of(int age) const {
  if (age < 0 || age > 2) throw StateError("history age must be 0, 1 or 2");
  if (static_cast<std::size_t>(age) >= populated_) throw StateError("history level not populated");
  return (newest_ + 3 - static_cast<std::size_t>(age)) % 3;
}

std::span<const double> PhiHistory::level(int age) const { return slots_[slot_of(age)]; }

std::span<const double> step(PhiHistory& history, const FdCoefficients& coeffs, double R,
                             const BoundarySpec& boundary, Exec exec) {
  if (history.populated() < 3 || history.step_index() < 2) {
    throw StateError("four-level update needs three populated time levels");
  }
  const bool periodic = is_periodic(boundary);
  const double source = coeffs.delta * history.dt() * R;
  history.advance([&](std::span<const double> newest, std::span<const double> previous,
                      std::span<double> out) {
    kernels::four_level({newest, previous, out, coeffs, source, periodic}, exec);
    if (const auto* d = std::get_if<Dirichlet>(&boundary)) {
      out.front() = d->left;
      out.back() = d->right;
    }
  });
  return history.level(0);
}

void advance(PhiHistory& history, const FdCoefficients& coeffs, double R,
             const BoundarySpec& boundary, long n_steps, Exec exec) {
  for (long i = 0; i < n_steps; ++i) step(history, coeffs, R, boundary, exec);
}

long aligned_steps(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw DomainError("dt must be positive and t_end >= 0");
  const double n = std::round(t_end / dt);
  if (std::abs(n * dt - t_end) > 1e-9 * t_end) {
    throw DomainError("t_end is not an integer multiple of dt");
  }
  return static_cast<long>(n);
}

namespace {

void apply_dirichlet(std::span<double> level, const BoundarySpec& boundary) {
  if (const auto* d = std::get_if<Dirichlet>(&boundary)) {
    level.front() = d->left;
    level.back() = d->right;
  }
}

}  // namespace

std::vector<double> run(const ModelParams& params, const Grid1D& grid,
                        const Initializer& initializer, const BoundarySpec& boundary,
                        double t_end, Exec exec) {
  validate(params);
  const long n_steps = aligned_steps(t_end, params.dt);
  if (n_steps < 2) throw DomainError("t_end must be at least 2 dt");

  const auto xs = grid.nodes(boundary);
  PhiHistory history(xs.size(), params.dt);
  std::vector<double> level(xs.size());
  for (int k = 0; k < 3; ++k) {
    const double t = k * params.dt;
    for (std::size_t j = 0; j < xs.size(); ++j) level[j] = initializer(xs[j], t);
    apply_dirichlet(level, boundary);
    history.seed(level);
  }
  const auto coeffs = coefficients(params.weights.omega0, params.relax.s1, params.relax.s2);
  advance(history, coeffs, params.source_R, boundary, n_steps - 2, exec);
  const auto out = history.level(0);
  return {out.begin(), out.end()};
}

PhiHistory bootstrap(const ModelParams& params, const Grid1D& grid,
                     std::span<const double> phi0, const BoundarySpec& boundary) {
  validate(params);
  const std::size_t n = grid.node_count(boundary);
  if (phi0.size() != n) throw LengthMismatch("initial field does not match the grid");

  constexpr int kSubsteps = 4;
  const double sub_eps = params.epsilon / kSubsteps;
  const double sub_dt = params.dt / kSubsteps;
  const bool periodic = is_periodic(boundary);

  PhiHistory history(n, params.dt);
  std::vector<double> cur(phi0.begin(), phi0.end());
  apply_dirichlet(cur, boundary);
  history.seed(cur);
  std::vector<double> next(n);
  for (int level = 1; level <= 2; ++level) {
    for (int s = 0; s < kSubsteps; ++s) {
      for (std::size_t j = 0; j < n; ++j) {
        const bool edge = j == 0 || j + 1 == n;
        if (edge && !periodic) {
          next[j] = cur[j];
          continue;
        }
        const double left = cur[j == 0 ? n - 1 : j - 1];
        const double right = cur[j + 1 == n ? 0 : j + 1];
        next[j] = cur[j] + sub_eps * (left - 2.0 * cur[j] + right) + sub_dt * params.source_R;
      }
      cur.swap(next);
    }
    history.seed(cur);
  }
  return history;
}

}  // namespace mrtlb
