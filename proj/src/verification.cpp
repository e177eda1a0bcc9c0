#include "mrtlb/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "mrtlb/errors.hpp"
#include "mrtlb/fd_scheme.hpp"

namespace mrtlb {

double analytic_phi(double x, double t, double kappa) {
  constexpr double pi = std::numbers::pi;
  return std::sin(pi * x) * std::exp(-kappa * pi * pi * t);
}

double rmse(std::span<const double> numerical, std::span<const double> analytic) {
  if (numerical.size() != analytic.size()) throw LengthMismatch("rmse inputs differ in length");
  if (numerical.empty()) throw LengthMismatch("rmse of an empty set");
  double sum = 0.0;
  for (std::size_t j = 0; j < numerical.size(); ++j) {
    const double d = numerical[j] - analytic[j];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(numerical.size()));
}

double convergence_rate(double rmse_coarse, double rmse_fine) {
  if (!(rmse_coarse > 0.0) || !(rmse_fine > 0.0)) {
    throw DomainError("convergence rate needs positive errors");
  }
  return std::log2(rmse_coarse / rmse_fine);
}

BenchmarkCase BenchmarkCase::make(double epsilon, double dx, Order order) {
  if (!(dx > 0.0)) throw DomainError("dx must be positive");
  BenchmarkCase c;
  c.epsilon = epsilon;
  c.dx = dx;
  c.dt = kDiffusiveRatio * dx * dx;
  c.kappa = epsilon / kDiffusiveRatio;
  c.order = order;
  c.params = calibrate(order, epsilon);
  return c;
}

BenchmarkField solve_benchmark(const BenchmarkCase& c, Exec exec) {
  const auto params = make_model_params(c.dx, c.dt, c.params.omega0,
                                        Relaxations{1.0, c.params.s1, c.params.s2});
  const auto grid = Grid1D::from_spacing(c.dx, 1.0);
  const BoundarySpec boundary = Dirichlet{0.0, 0.0};
  const double kappa = params.kappa;
  BenchmarkField out;
  out.numeric = run(params, grid, [kappa](double x, double t) { return analytic_phi(x, t, kappa); },
                    boundary, c.t_end, exec);
  out.x = grid.nodes(boundary);
  const double t = static_cast<double>(aligned_steps(c.t_end, c.dt)) * c.dt;
  out.analytic.resize(out.x.size());
  for (std::size_t j = 0; j < out.x.size(); ++j) out.analytic[j] = analytic_phi(out.x[j], t, kappa);
  // sin(pi) is not exactly zero in floating point.
  out.analytic.front() = 0.0;
  out.analytic.back() = 0.0;
  return out;
}

double run_benchmark(const BenchmarkCase& c, RmseNodes nodes, Exec exec) {
  const auto field = solve_benchmark(c, exec);
  std::span<const double> num(field.numeric);
  std::span<const double> ref(field.analytic);
  if (nodes == RmseNodes::interior) {
    num = num.subspan(1, num.size() - 2);
    ref = ref.subspan(1, ref.size() - 2);
  }
  return rmse(num, ref);
}

std::vector<ConvergenceReport> reproduce_table(Order order, std::span<const double> eps_list,
                                               std::span<const double> dx_list,
                                               RmseNodes nodes) {
  if (eps_list.empty() || dx_list.empty()) throw DomainError("empty epsilon or dx list");
  std::vector<double> spacings(dx_list.begin(), dx_list.end());
  std::sort(spacings.begin(), spacings.end(), std::greater<>());

  // Calibrate up front so infeasible epsilons fail before any run starts.
  std::vector<BenchmarkCase> cases;
  cases.reserve(eps_list.size() * spacings.size());
  for (double e : eps_list) {
    for (double dx : spacings) cases.push_back(BenchmarkCase::make(e, dx, order));
  }

  std::vector<double> errors(cases.size());
  std::vector<std::exception_ptr> failures(cases.size());
  const std::ptrdiff_t n_cases = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n_cases; ++i) {
    try {
      errors[i] = run_benchmark(cases[i], nodes, Exec::serial);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<ConvergenceReport> reports;
  std::size_t i = 0;
  for (double e : eps_list) {
    ConvergenceReport r;
    r.epsilon = e;
    r.order = order;
    for (std::size_t k = 0; k < spacings.size(); ++k, ++i) {
      r.rows.push_back({cases[i].dx, cases[i].dt, errors[i]});
    }
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
      r.rates.push_back(convergence_rate(r.rows[k - 1].rmse, r.rows[k].rmse));
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<Profile> profile_solution(std::span<const double> eps_list, double dx) {
  std::vector<Profile> out;
  for (double e : eps_list) {
    Profile p;
    p.epsilon = e;
    p.field = solve_benchmark(BenchmarkCase::make(e, dx, Order::sixth));
    for (std::size_t j = 0; j < p.field.x.size(); ++j) {
      p.max_deviation =
          std::max(p.max_deviation, std::abs(p.field.numeric[j] - p.field.analytic[j]));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mrtlb
