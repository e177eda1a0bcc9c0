// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mrtlb/calibration.hpp"
#include "mrtlb/fd_scheme.hpp"
#include "mrtlb/lbm.hpp"
#include "mrtlb/stability.hpp"
#include "mrtlb/verification.hpp"
#include "reference_tables.hpp"

using namespace mrtlb;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double ratio(double a, double b) { return a > b ? a / b : b / a; }

struct Triple {
  double omega0, s1, s2;
};

Triple random_triple(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> w(0.01, 0.99), s(0.01, 1.99);
  return {w(gen), s(gen), s(gen)};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double multiset_distance(std::vector<cd> a, std::vector<cd> b) {
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](cd p, cd q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

Outcome sixth_order_params() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& row : reference::kSixthOrderParams) {
    const auto c = calibrate(Order::sixth, row.epsilon);
    for (auto [got, want] : {std::pair{c.omega0, row.omega0}, std::pair{c.s1, row.s1},
                             std::pair{c.s2, row.s2}}) {
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = worst <= 1e-9 && secs < 1.0;
  o.detail = fmt("max relative error %.2e, %.3f s", worst, secs);
  return o;
}

Outcome fourth_order_closed_form() {
  Outcome o;
  double worst_s2 = 0.0;
  int exact = 0;
  for (std::size_t i = 0; i < reference::kSixthOrderParams.size(); ++i) {
    const auto c = calibrate(Order::fourth, reference::kSixthOrderParams[i].epsilon, 1.0);
    if (c.omega0 == reference::kFourthOrderOmega0[i]) ++exact;
    worst_s2 = std::max(worst_s2, std::abs(c.s2 - reference::kFourthOrderS2[i]));
  }
  o.pass = exact == 5 && worst_s2 <= 1e-14;
  o.detail = fmt("%.0f/5 omega0 exact, max |s2 error| %.2e", exact, worst_s2);
  return o;
}

Outcome convergence(Order order, const reference::RmseTable& table, double lo, double hi,
                    double factor) {
  Outcome o;
  const auto reports = reproduce_table(order, kTableEpsilons, kTableSpacings);
  double rmin = 1e9, rmax = -1e9, worst = 1.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (double r : reports[i].rates) {
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    for (std::size_t k = 0; k < reports[i].rows.size(); ++k) {
      worst = std::max(worst, ratio(reports[i].rows[k].rmse, table[i][k]));
    }
  }
  o.pass = rmin >= lo && rmax <= hi && worst <= factor;
  o.detail = fmt("C_R in [%.3f, %.3f], worst RMSE ratio %.3f", rmin, rmax, worst);
  return o;
}

Outcome second_and_fourth() {
  const auto second = convergence(Order::second, reference::kSecondOrderRmse, 1.8, 2.05, 2.0);
  const auto fourth = convergence(Order::fourth, reference::kFourthOrderRmse, 3.8, 4.1, 2.0);
  return {second.pass && fourth.pass, "second: " + second.detail + "; fourth: " + fourth.detail};
}

Outcome equivalence() {
  Outcome o;
  std::mt19937_64 gen(2024);
  const std::size_t n = 64;
  double worst = 0.0;  // deviation / max|phi| at the same step
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_triple(gen);
    const double dx = 1.0 / n;
    const auto p = make_model_params(dx, dx * dx, t.omega0, {1.0, t.s1, t.s2});
    const auto k = coefficients(t.omega0, t.s1, t.s2);
    auto f = initialize(random_field(n, gen()), p.weights, p.dt, 0.0);
    std::vector<std::vector<double>> trace{macro_phi(f, p.dt, 0.0)};
    for (int step_no = 0; step_no < 200; ++step_no) {
      f = evolve(f, p);
      trace.push_back(macro_phi(f, p.dt, 0.0));
    }
    for (std::size_t m = 2; m + 1 < trace.size(); ++m) {
      PhiHistory h(n, p.dt);
      h.seed(trace[m - 2]);
      h.seed(trace[m - 1]);
      h.seed(trace[m]);
      const auto predicted = step(h, k, 0.0, Periodic{});
      double dev = 0.0;
      for (std::size_t j = 0; j < n; ++j) dev = std::max(dev, std::abs(predicted[j] - trace[m + 1][j]));
      worst = std::max(worst, dev / max_abs(trace[m + 1]));
    }
  }
  o.pass = worst <= 1e-12;
  o.detail = fmt("max deviation / max|phi| = %.2e over 50 triples x 198 steps", worst);
  return o;
}

Outcome unconditional_stability() {
  Outcome o;
  std::mt19937_64 gen(7);
  const int n_theta = 720;
  double max_radius = 0.0, min_rh = 1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = random_triple(gen);
    const auto report = spectral_radius_scan(t.omega0, t.s1, t.s2, n_theta);
    max_radius = std::max(max_radius, report.max_spectral_radius);
    for (int k = 0; k <= n_theta; ++k) {
      const double theta = -kPi + 2.0 * kPi * k / n_theta;
      if (std::cos(theta) >= 1.0 - 1e-12) continue;
      for (double v : routh_hurwitz_values(char_coeffs(t.omega0, t.s1, t.s2, theta))) {
        min_rh = std::min(min_rh, v);
      }
    }
  }
  o.pass = max_radius <= 1.0 + 1e-10 && min_rh > 0.0;
  o.detail = fmt("max spectral radius 1 + %.2e, min Routh-Hurwitz value %.3e", max_radius - 1.0,
                 min_rh);
  return o;
}

Outcome characteristic_consistency() {
  Outcome o;
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> th(-kPi, kPi);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_triple(gen);
    const double theta = th(gen);
    const auto r = cubic_roots(char_coeffs(t.omega0, t.s1, t.s2, theta));
    const std::vector<cd> roots(r.begin(), r.end());
    const Eigen::Vector3cd g =
        Eigen::ComplexEigenSolver<Eigen::Matrix3cd>(amplification_G(t.omega0, t.s1, t.s2, theta))
            .eigenvalues();
    const Eigen::Vector3cd h =
        Eigen::EigenSolver<Eigen::Matrix3d>(
            amplification_H(coefficients(t.omega0, t.s1, t.s2), theta), false)
            .eigenvalues();
    worst = std::max(worst, multiset_distance({g(0), g(1), g(2)}, roots));
    worst = std::max(worst, multiset_distance({h(0), h(1), h(2)}, roots));
  }
  o.pass = worst <= 1e-12;
  o.detail = fmt("max eigenvalue mismatch %.2e over 100 samples", worst);
  return o;
}

Outcome steady_source() {
  Outcome o;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> R(0.5, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = random_triple(gen);
    const double dx = 0.05, kappa = 0.01;
    const double dt = mesh_fourier(t.omega0, t.s1) * dx * dx / kappa;
    const auto p = make_model_params(dx, dt, t.omega0, {1.0, t.s1, t.s2}, R(gen));
    const auto xs = Grid1D::from_spacing(dx, 1.0).nodes(Dirichlet{});
    std::vector<double> exact(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      exact[j] = p.source_R * xs[j] * (1.0 - xs[j]) / (2.0 * p.kappa);
    }
    PhiHistory h(xs.size(), dt);
    for (int k = 0; k < 3; ++k) h.seed(exact);
    const auto coeffs = coefficients(t.omega0, t.s1, t.s2);
    for (int n = 0; n < 100; ++n) {
      const std::vector<double> before(h.level(0).begin(), h.level(0).end());
      const auto after = step(h, coeffs, p.source_R, Dirichlet{0.0, 0.0});
      for (std::size_t j = 0; j < before.size(); ++j) {
        worst = std::max(worst, std::abs(after[j] - before[j]));
      }
    }
  }
  o.pass = worst <= 1e-10;
  o.detail = fmt("max per-step change %.2e over 3 parameter sets x 100 steps", worst);
  return o;
}

Outcome matrix_form() {
  Outcome o;
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> s0(0.01, 1.99), R(-1.0, 1.0);
  const std::size_t n = 32;
  double worst_pop = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_triple(gen);
    const auto p = make_model_params(0.1, 0.01, t.omega0, {s0(gen), t.s1, t.s2}, R(gen));
    DistributionField a{random_field(n, gen()), random_field(n, gen()), random_field(n, gen())};
    auto b = a;
    for (int step_no = 0; step_no < 10; ++step_no) {
      a = evolve(a, p);
      b = evolve_matrix_form(b, p);
      for (std::size_t j = 0; j < n; ++j) {
        worst_pop = std::max({worst_pop, std::abs(a.f_minus[j] - b.f_minus[j]),
                              std::abs(a.f_zero[j] - b.f_zero[j]),
                              std::abs(a.f_plus[j] - b.f_plus[j])});
      }
    }
  }

  double worst_s0 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_triple(gen);
    const auto phi0 = random_field(n, gen());
    std::vector<std::vector<double>> reference;
    for (double s0v : {0.1, 1.0, 1.9}) {
      const auto p = make_model_params(0.1, 0.01, t.omega0, {s0v, t.s1, t.s2});
      auto f = initialize(phi0, p.weights, p.dt, 0.0);
      for (int step_no = 0; step_no < 10; ++step_no) {
        f = evolve_matrix_form(f, p);
        const auto phi = macro_phi(f, p.dt, 0.0);
        if (reference.size() < 10) {
          reference.push_back(phi);
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          worst_s0 = std::max(worst_s0, std::abs(phi[j] - reference[step_no][j]));
        }
      }
    }
  }
  o.pass = worst_pop <= 1e-13 && worst_s0 <= 1e-12;
  o.detail = fmt("evolve vs matrix form %.2e, s0 variation %.2e", worst_pop, worst_s0);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Sixth-order calibration values", sixth_order_params},
      {"Closed-form fourth-order parameters", fourth_order_closed_form},
      {"Sixth-order convergence",
       [] { return convergence(Order::sixth, reference::kSixthOrderRmse, 5.7, 6.1, 3.0); }},
      {"Second- and fourth-order convergence", second_and_fourth},
      {"LB and four-level scheme equivalence", equivalence},
      {"Unconditional stability", unconditional_stability},
      {"Characteristic polynomial consistency", characteristic_consistency},
      {"Steady source term", steady_source},
      {"Matrix-form cross-check and s0 independence", matrix_form},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
