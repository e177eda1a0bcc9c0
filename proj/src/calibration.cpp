#include "mrtlb/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mrtlb/errors.hpp"

namespace mrtlb {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }
bool open_rate(double v) { return v > 0.0 && v < 2.0; }

void require_rate(const char* name, double v) {
  if (!open_rate(v)) {
    throw DomainError(std::string(name) + " = " + describe(v) + " must lie in (0, 2)");
  }
}

void require_omega0(double omega0) {
  if (!open_unit(omega0)) {
    throw DomainError("omega0 = " + describe(omega0) + " must lie in (0, 1)");
  }
}

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Seed for the sixth-order branch and the continuation schedule around it.
constexpr detail::Root kBranchSeed{0.9159, 1.1450};
constexpr double kSeedEpsilon = 0.1;
constexpr double kDirectSeedLimit = 0.125;
constexpr double kContinuationStep = 0.005;
constexpr int kNewtonMaxIterations = 100;
constexpr int kMaxStepHalvings = 60;
// Lower edge of the omega0 range on the physical branch.
constexpr double kBranchOmega0Min = 0.8;

bool in_box(double epsilon, double s1, double s2) {
  if (!open_rate(s1) || !open_rate(s2)) return false;
  return open_unit(detail::omega0_for(epsilon, s1));
}

bool on_branch(double epsilon, const detail::Root& r) {
  return detail::omega0_for(epsilon, r.s1) >= kBranchOmega0Min;
}

CalibrationResult finish(double epsilon, double omega0, double s1, double s2, Order order) {
  CalibrationResult out;
  out.epsilon = epsilon;
  out.omega0 = omega0;
  out.s1 = s1;
  out.s2 = s2;
  out.residual_second = residual_second(omega0, s1, s2, epsilon);
  out.residual_fourth = residual_fourth(omega0, s1, s2, epsilon);
  out.order = order;
  return out;
}


NoRealRoot no_root(double epsilon) {
  return NoRealRoot("no admissible real root of the sixth-order conditions at epsilon = " +
                    describe(epsilon) + " (solvable only for epsilon <= epsilon_max)");
}

}  // namespace

Weights weights_from_omega0(double omega0) {
  require_omega0(omega0);
  return {omega0, (1.0 - omega0) / 2.0};
}

Relaxations make_relaxations(double s0, double s1, double s2) {
  if (!std::isfinite(s0)) throw DomainError("s0 must be finite");
  require_rate("s1", s1);
  require_rate("s2", s2);
  return {s0, s1, s2};
}

Relaxations from_srt(double omega) { return make_relaxations(omega, omega, omega); }

Relaxations from_trt(double s_plus, double s_minus) {
  return make_relaxations(s_plus, s_minus, s_plus);
}

Relaxations from_regularized(double omega) { return make_relaxations(1.0, omega, 1.0); }

Relaxations from_mlk(double omega, double eta) {
  const double denom = 1.0 - omega * eta;
  if (denom == 0.0) throw DomainError("modified lattice-kinetic rate is singular (omega * eta = 1)");
  return make_relaxations(omega, omega / denom, omega);
}

double mesh_fourier(double omega0, double s1) {
  require_omega0(omega0);
  require_rate("s1", s1);
  return (1.0 - omega0) * (1.0 / s1 - 0.5);
}

double diffusivity(const ModelParams& p) {
  return 2.0 * p.weights.omega1 * (1.0 / p.relax.s1 - 0.5) * p.dx * p.dx / p.dt;
}

ModelParams make_model_params(double dx, double dt, double omega0, const Relaxations& relax,
                              double source_R) {
  ModelParams p;
  p.dx = dx;
  p.dt = dt;
  p.source_R = source_R;
  p.weights = weights_from_omega0(omega0);
  p.relax = make_relaxations(relax.s0, relax.s1, relax.s2);
  if (!(dx > 0.0) || !(dt > 0.0)) throw DomainError("dx and dt must be positive");
  if (!std::isfinite(source_R)) throw DomainError("source term must be finite");
  p.kappa = diffusivity(p);
  p.epsilon = mesh_fourier(omega0, relax.s1);
  validate(p);
  return p;
}

void validate(const ModelParams& p) {
  if (!(p.dx > 0.0) || !(p.dt > 0.0)) throw DomainError("dx and dt must be positive");
  if (!(p.kappa > 0.0)) throw DomainError("kappa must be positive");
  require_omega0(p.weights.omega0);
  if (p.weights.omega1 != (1.0 - p.weights.omega0) / 2.0) {
    throw DomainError("omega1 must equal (1 - omega0) / 2");
  }
  make_relaxations(p.relax.s0, p.relax.s1, p.relax.s2);
  constexpr double tol = 1e-12;
  if (!relative_close(p.epsilon, p.kappa * p.dt / (p.dx * p.dx), tol)) {
    throw DomainError("epsilon disagrees with kappa dt / dx^2");
  }
  if (!relative_close(p.epsilon, mesh_fourier(p.weights.omega0, p.relax.s1), tol)) {
    throw DomainError("epsilon disagrees with (1 - omega0)(1/s1 - 1/2)");
  }
}

namespace {

// The sixth-order system is evaluated in long double for the final polish.
template <class T>
T residual_second_t(T w, T s1, T s2, T e) {
  return s1 * s2 / 12 - (w * s2 / 2 + s1 / 2 - 1) + (s1 * s2 / 2 - s2 - s1) * e;
}

template <class T>
T residual_fourth_t(T w, T s1, T s2, T e) {
  return s1 * s2 / 360 - (w * s2 / 2 + s1 / 2 - 1) / 12 -
         (s1 * s2 / 6 - w * s2 / 2 - s1 / 2 + 1) * e / 2 + (-2 * s1 * s2 / 3 + s2 + s1 - 1) * e * e;
}

template <class T>
T omega0_for_t(T e, T s1) {
  return 1 - 2 * e * s1 / (2 - s1);
}

template <class T>
std::array<T, 4> sixth_jacobian_t(T e, T s1, T s2) {
  const T w = omega0_for_t(e, s1);
  const T dw = -4 * e / ((2 - s1) * (2 - s1));
  const T dr2_ds1 = s2 / 12 - s2 * dw / 2 - T(0.5) + (s2 / 2 - 1) * e;
  const T dr2_ds2 = s1 / 12 - w / 2 + (s1 / 2 - 1) * e;
  const T dr4_ds1 = s2 / 360 - (dw * s2 / 2 + T(0.5)) / 12 - (s2 / 6 - dw * s2 / 2 - T(0.5)) * e / 2 +
                    (-2 * s2 / 3 + 1) * e * e;
  const T dr4_ds2 = s1 / 360 - w / 24 - (s1 / 6 - w / 2) * e / 2 + (-2 * s1 / 3 + 1) * e * e;
  return {dr2_ds1, dr2_ds2, dr4_ds1, dr4_ds2};
}

// A few extended-precision Newton steps from a converged double root, so the
// reported parameters are the correctly rounded root rather than any point
// within tolerance.
CalibrationResult finish_sixth(double epsilon, const detail::Root& x) {
  using L = long double;
  const L e = epsilon;
  L s1 = x.s1, s2 = x.s2;
  for (int it = 0; it < 4; ++it) {
    const L w = omega0_for_t(e, s1);
    const L r2 = residual_second_t(w, s1, s2, e);
    const L r4 = residual_fourth_t(w, s1, s2, e);
    const auto [a, b, c, d] = sixth_jacobian_t(e, s1, s2);
    const L det = a * d - b * c;
    if (det == 0) break;
    s1 -= (d * r2 - b * r4) / det;
    s2 -= (-c * r2 + a * r4) / det;
  }
  // Fall back to the double root if the polish wandered.
  if (!(std::abs(static_cast<double>(s1) - x.s1) < 1e-9 &&
        std::abs(static_cast<double>(s2) - x.s2) < 1e-9)) {
    s1 = x.s1;
    s2 = x.s2;
  }
  return finish(epsilon, static_cast<double>(omega0_for_t(e, s1)), static_cast<double>(s1),
                static_cast<double>(s2), Order::sixth);
}

}  // namespace

double residual_second(double omega0, double s1, double s2, double epsilon) {
  return residual_second_t(omega0, s1, s2, epsilon);
}

double residual_fourth(double omega0, double s1, double s2, double epsilon) {
  return residual_fourth_t(omega0, s1, s2, epsilon);
}

std::string_view to_string(Order order) {
  switch (order) {
    case Order::second: return "second";
    case Order::fourth: return "fourth";
    case Order::sixth: return "sixth";
  }
  return "unknown";
}

Order parse_order(std::string_view text) {
  if (text == "2" || text == "second") return Order::second;
  if (text == "4" || text == "fourth") return Order::fourth;
  if (text == "6" || text == "sixth") return Order::sixth;
  throw DomainError("order must be one of 2, 4, 6");
}

namespace detail {

double omega0_for(double epsilon, double s1) { return omega0_for_t(epsilon, s1); }

std::array<double, 4> sixth_jacobian(double e, double s1, double s2) {
  return sixth_jacobian_t(e, s1, s2);
}

std::optional<Root> newton_sixth(double e, Root x) {
  if (!in_box(e, x.s1, x.s2)) return std::nullopt;
  for (int it = 0; it <= kNewtonMaxIterations; ++it) {
    const double w = omega0_for(e, x.s1);
    const double r2 = residual_second(w, x.s1, x.s2, e);
    const double r4 = residual_fourth(w, x.s1, x.s2, e);
    if (std::max(std::abs(r2), std::abs(r4)) <= kCalibrationTolerance) return x;
    if (it == kNewtonMaxIterations) break;

    const auto [a, b, c, d] = sixth_jacobian(e, x.s1, x.s2);
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double step1 = -(d * r2 - b * r4) / det;
    const double step2 = -(-c * r2 + a * r4) / det;

    double lambda = 1.0;
    int halvings = 0;
    while (!in_box(e, x.s1 + lambda * step1, x.s2 + lambda * step2)) {
      if (++halvings > kMaxStepHalvings) return std::nullopt;
      lambda *= 0.5;
    }
    x.s1 += lambda * step1;
    x.s2 += lambda * step2;
  }
  return std::nullopt;
}

}  // namespace detail

CalibrationResult calibrate_sixth(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive, got " + describe(epsilon));
  }
  if (epsilon <= kDirectSeedLimit) {
    if (auto r = detail::newton_sixth(epsilon, kBranchSeed); r && on_branch(epsilon, *r)) {
      return finish_sixth(epsilon, *r);
    }
  }

  auto r = detail::newton_sixth(kSeedEpsilon, kBranchSeed);
  if (!r) throw no_root(kSeedEpsilon);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(epsilon - kSeedEpsilon) /
                                                       kContinuationStep)));
  for (int k = 1; k <= n; ++k) {
    const double e = kSeedEpsilon + (epsilon - kSeedEpsilon) * k / n;
    r = detail::newton_sixth(k == n ? epsilon : e, *r);
    if (!r) throw no_root(epsilon);
  }
  if (!on_branch(epsilon, *r)) throw no_root(epsilon);
  return finish_sixth(epsilon, *r);
}

CalibrationResult calibrate_fourth(double epsilon, double s1) {
  require_rate("s1", s1);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive, got " + describe(epsilon));
  }
  const double omega0 = 1.0 - epsilon / (1.0 / s1 - 0.5);
  require_omega0(omega0);
  // residual_second is linear in s2: s2 * slope + offset = 0.
  const double slope = s1 / 12.0 - omega0 / 2.0 + s1 * epsilon / 2.0 - epsilon;
  const double offset = 1.0 - s1 / 2.0 - s1 * epsilon;
  if (slope == 0.0) throw DomainError("fourth-order condition is degenerate for this s1");
  const double s2 = -offset / slope;
  require_rate("s2", s2);
  return finish(epsilon, omega0, s1, s2, Order::fourth);
}

CalibrationResult calibrate_second(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive, got " + describe(epsilon));
  }
  const double omega0 = 1.0 - 2.0 * epsilon;
  require_omega0(omega0);
  return finish(epsilon, omega0, 1.0, 1.0, Order::second);
}

CalibrationResult calibrate(Order order, double epsilon, double s1) {
  switch (order) {
    case Order::second: return calibrate_second(epsilon);
    case Order::fourth: return calibrate_fourth(epsilon, s1);
    case Order::sixth: return calibrate_sixth(epsilon);
  }
  throw DomainError("unknown order");
}

double epsilon_max() {
  static const double cached = [] {
    auto solvable = [](double e) {
      try {
        calibrate_sixth(e);
        return true;
      } catch (const NoRealRoot&) {
        return false;
      }
    };
    double lo = 0.24;
    double hi = 0.30;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (solvable(mid) ? lo : hi) = mid;
    }
    return lo;
  }();
  return cached;
}

std::vector<SweepRow> calibration_sweep(std::span<const double> eps_grid) {
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))) {
      throw DomainError("sweep grid must be strictly positive and increasing");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(eps_grid.size());
  std::optional<detail::Root> previous;
  for (double e : eps_grid) {
    SweepRow row;
    row.epsilon = e;
    if (previous) {
      if (auto r = detail::newton_sixth(e, *previous); r && on_branch(e, *r)) {
        row.result = finish_sixth(e, *r);
      }
    }
    if (!row.result) {
      try {
        row.result = calibrate_sixth(e);
      } catch (const NoRealRoot&) {
      }
    }
    if (row.result) {
      row.status = "ok";
      previous = detail::Root{row.result->s1, row.result->s2};
    } else {
      row.status = "no_real_root";
      previous.reset();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mrtlb
