// Command-line front end. Exit codes: 0 success, 1 usage or validation error,
// 2 calibration infeasible, 3 numerical property violated.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrtlb/calibration.hpp"
#include "mrtlb/errors.hpp"
#include "mrtlb/fd_scheme.hpp"
#include "mrtlb/io.hpp"
#include "mrtlb/lbm.hpp"
#include "mrtlb/stability.hpp"
#include "mrtlb/verification.hpp"

namespace {

using namespace mrtlb;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kViolated = 3 };

// Thrown by a command whose numerical check failed after writing its report.
struct PropertyViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a JSON object of flag values. Top-level scalars and arrays apply to
// whichever command is running; an object keyed by a command name applies to
// that command only. The file is read after the command line, so the selected
// command is known here.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        out[name] = opt->as<std::vector<std::string>>();
      } else if (default_also && !opt->get_default_str().empty()) {
        out[name] = opt->get_default_str();
      }
    }
    return out.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json root;
    try {
      input >> root;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw CLI::ConversionError("config must be a JSON object");
    const auto selected = root_->get_subcommands();
    if (selected.empty()) return {};
    const std::string command = selected.front()->get_name();
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : root.items()) {
      if (value.is_object()) {
        if (key != command) continue;
        for (const auto& [k, v] : value.items()) items.push_back(item(command, k, v));
      } else {
        items.push_back(item(command, key, value));
      }
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();  // shortest round-trip form
    throw CLI::ConversionError("unsupported config value " + v.dump());
  }

  static CLI::ConfigItem item(const std::string& command, std::string key, const json& v) {
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::ConfigItem it;
    it.parents = {command};
    it.name = key;
    if (v.is_array()) {
      for (const auto& e : v) it.inputs.push_back(scalar(e));
    } else {
      it.inputs.push_back(scalar(v));
    }
    return it;
  }

  const CLI::App* root_;
};

struct Common {
  std::string output;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, const char* default_format) {
  c.format = default_format;
  sub->add_option("-o,--output", c.output, "Write to this file instead of stdout");
  sub->add_option("--format", c.format, "Output encoding")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->fallthrough();
}

template <class Write>
void emit(const Common& c, Write&& write) {
  if (c.output.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw DomainError("cannot open " + c.output + " for writing");
  write(file);
  if (!file) throw DomainError("failed writing " + c.output);
}

void emit_json(const Common& c, const json& j) {
  emit(c, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

// Weighted form hits round values like 0.1 exactly where lo + k h would not.
std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = (lo * (n - 1 - k) + hi * k) / (n - 1);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// --- calibrate -------------------------------------------------------------

struct CalibrateArgs {
  Common common;
  double epsilon = 0.0;
  std::string order = "6";
  std::optional<double> s1;
};

void cmd_calibrate(const CalibrateArgs& a) {
  const Order order = parse_order(a.order);
  require(!a.s1 || order == Order::fourth, "--s1 applies to --order 4 only");
  CalibrationResult r;
  try {
    r = calibrate(order, a.epsilon, a.s1.value_or(1.0));
  } catch (const NoRealRoot& e) {
    throw NoRealRoot(std::string(e.what()) + "; epsilon_max = " + io::format_real(epsilon_max()));
  }
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) { io::write_calibration_csv(os, r); });
  } else {
    emit_json(a.common, io::to_json(r));
  }
}

// --- run -------------------------------------------------------------------

struct RunArgs {
  Common common;
  double epsilon = 0.1;
  double dx = 0.025;
  std::string order = "6";
  double t_end = kBenchmarkEndTime;
};

void cmd_run(const RunArgs& a) {
  auto c = BenchmarkCase::make(a.epsilon, a.dx, parse_order(a.order));
  c.t_end = a.t_end;
  const auto field = solve_benchmark(c);
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) { io::write_field_csv(os, field.x, field.numeric); });
  } else {
    json j = io::to_json(c.params);
    j["dx"] = c.dx;
    j["dt"] = c.dt;
    j["kappa"] = c.kappa;
    j["t_end"] = c.t_end;
    j["x"] = field.x;
    j["phi"] = field.numeric;
    j["phi_analytic"] = field.analytic;
    j["rmse"] = rmse(field.numeric, field.analytic);
    emit_json(a.common, j);
  }
}

// --- convergence -----------------------------------------------------------

struct ConvergenceArgs {
  Common common;
  std::string order = "6";
  std::vector<double> epsilons = kTableEpsilons;
  std::vector<double> spacings = kTableSpacings;
  std::string nodes = "all";
};

void cmd_convergence(const ConvergenceArgs& a) {
  require(!a.epsilons.empty(), "epsilon list is empty");
  require(a.spacings.size() >= 2, "need at least two grid spacings");
  for (std::size_t k = 1; k < a.spacings.size(); ++k) {
    require(a.spacings[k] < a.spacings[k - 1], "grid spacings must be decreasing");
  }
  const auto nodes = a.nodes == "interior" ? RmseNodes::interior : RmseNodes::all;
  const auto reports = reproduce_table(parse_order(a.order), a.epsilons, a.spacings, nodes);
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) { io::write_convergence_csv(os, reports); });
  } else {
    emit_json(a.common, io::to_json(reports));
  }
}

// --- stability -------------------------------------------------------------

struct StabilityArgs {
  Common common;
  double omega0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  int n_theta = kDefaultThetaSamples;
};

void cmd_stability(const StabilityArgs& a) {
  const auto r = spectral_radius_scan(a.omega0, a.s1, a.s2, a.n_theta);
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) {
      os << "max_spectral_radius,worst_theta,rh_min_margin,stable,theta_samples\n"
         << io::format_real(r.max_spectral_radius) << ',' << io::format_real(r.worst_theta)
         << ',' << io::format_real(r.rh_min_margin) << ',' << (r.stable ? "true" : "false")
         << ',' << r.theta_samples << '\n';
    });
  } else {
    emit_json(a.common, io::to_json(r));
  }
  if (!r.stable) throw PropertyViolated("spectral radius exceeds 1 + tolerance");
}

// --- equivalence -----------------------------------------------------------

struct EquivalenceArgs {
  Common common;
  int nodes = 64;
  long steps = 200;
  double omega0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double source = 0.0;
  std::uint64_t seed = 42;
};

void cmd_equivalence(const EquivalenceArgs& a) {
  require(a.nodes >= 8, "--nodes must be at least 8");
  require(a.steps >= 3, "--steps must be at least 3");
  const double dx = 1.0 / a.nodes;
  const auto params = make_model_params(dx, dx * dx, a.omega0, {1.0, a.s1, a.s2}, a.source);
  const auto phi0 = random_field(static_cast<std::size_t>(a.nodes), a.seed);
  const auto r = check_equivalence(phi0, params, a.steps);
  const double bound = 1e-12 * r.max_abs_phi;
  const bool passed = r.max_abs_deviation <= bound;
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) {
      os << "max_abs_deviation,max_abs_phi,steps_compared,passed\n"
         << io::format_real(r.max_abs_deviation) << ',' << io::format_real(r.max_abs_phi) << ','
         << r.steps_compared << ',' << (passed ? "true" : "false") << '\n';
    });
  } else {
    emit_json(a.common, {{"max_abs_deviation", r.max_abs_deviation},
                         {"max_abs_phi", r.max_abs_phi},
                         {"steps_compared", r.steps_compared},
                         {"seed", a.seed},
                         {"passed", passed}});
  }
  if (!passed) throw PropertyViolated("lattice-Boltzmann and four-level traces differ");
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  Common common;
  double eps_min = 0.01;
  double eps_max = 0.26;
  int points = 26;
};

void cmd_sweep(const SweepArgs& a) {
  require(a.eps_min > 0.0 && a.eps_min < a.eps_max, "need 0 < eps-min < eps-max");
  require(a.points >= 2, "--points must be at least 2");
  const auto rows = calibration_sweep(linspace(a.eps_min, a.eps_max, a.points));
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
  } else {
    emit_json(a.common, io::to_json(rows));
  }
}

// --- profile ---------------------------------------------------------------

struct ProfileArgs {
  Common common;
  std::vector<double> epsilons{0.1, 0.15, 0.2, 0.24};
  double dx = 0.025;
};

void cmd_profile(const ProfileArgs& a) {
  require(!a.epsilons.empty(), "epsilon list is empty");
  const auto profiles = profile_solution(a.epsilons, a.dx);
  if (a.common.format == "csv") {
    emit(a.common, [&](std::ostream& os) { io::write_profile_csv(os, profiles); });
  } else {
    emit_json(a.common, io::to_json(profiles));
  }
}

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D1Q3 MRT lattice-Boltzmann and four-level finite-difference toolkit", "mrtlb"};
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON file with flag values; flags given on the command line win");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  CalibrateArgs cal;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Solve for (omega0, s1, s2) at a mesh Fourier number");
  add_common(calibrate_cmd, cal.common, "json");
  calibrate_cmd->add_option("--epsilon", cal.epsilon, "Mesh Fourier number")->required();
  calibrate_cmd->add_option("--order", cal.order, "Target order 2, 4 or 6")->capture_default_str();
  calibrate_cmd->add_option("--s1", cal.s1, "Fixed s1 for order 4");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Solve the sin(pi x) benchmark and print the field");
  add_common(run_cmd, run.common, "csv");
  run_cmd->add_option("--epsilon", run.epsilon)->capture_default_str();
  run_cmd->add_option("--dx", run.dx)->capture_default_str();
  run_cmd->add_option("--order", run.order)->capture_default_str();
  run_cmd->add_option("--t-end", run.t_end)->capture_default_str();

  ConvergenceArgs conv;
  auto* conv_cmd = app.add_subcommand("convergence", "Grid-convergence table");
  add_common(conv_cmd, conv.common, "csv");
  conv_cmd->add_option("--order", conv.order)->capture_default_str();
  conv_cmd->add_option("--epsilons", conv.epsilons)->delimiter(',')->capture_default_str();
  conv_cmd->add_option("--dx", conv.spacings, "Grid spacings, coarsest first")
      ->delimiter(',')
      ->capture_default_str();
  conv_cmd->add_option("--rmse-nodes", conv.nodes)
      ->check(CLI::IsMember({"all", "interior"}))
      ->capture_default_str();

  StabilityArgs stab;
  auto* stab_cmd = app.add_subcommand("stability", "Spectral-radius scan over the wavenumber");
  add_common(stab_cmd, stab.common, "json");
  stab_cmd->add_option("--omega0", stab.omega0)->required();
  stab_cmd->add_option("--s1", stab.s1)->required();
  stab_cmd->add_option("--s2", stab.s2)->required();
  stab_cmd->add_option("--n-theta", stab.n_theta)->capture_default_str();

  EquivalenceArgs eq;
  auto* eq_cmd = app.add_subcommand("equivalence", "Compare the LB trace with the four-level scheme");
  add_common(eq_cmd, eq.common, "json");
  eq_cmd->add_option("--nodes", eq.nodes)->capture_default_str();
  eq_cmd->add_option("--steps", eq.steps)->capture_default_str();
  eq_cmd->add_option("--omega0", eq.omega0)->required();
  eq_cmd->add_option("--s1", eq.s1)->required();
  eq_cmd->add_option("--s2", eq.s2)->required();
  eq_cmd->add_option("--source", eq.source, "Constant source R")->capture_default_str();
  eq_cmd->add_option("--seed", eq.seed, "mt19937_64 seed")->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sixth-order parameters over an epsilon range");
  add_common(sweep_cmd, sweep.common, "csv");
  sweep_cmd->add_option("--eps-min", sweep.eps_min)->capture_default_str();
  sweep_cmd->add_option("--eps-max", sweep.eps_max)->capture_default_str();
  sweep_cmd->add_option("--points", sweep.points)->capture_default_str();

  ProfileArgs prof;
  auto* prof_cmd = app.add_subcommand("profile", "Sixth-order solution profiles at t = 12");
  add_common(prof_cmd, prof.common, "csv");
  prof_cmd->add_option("--epsilons", prof.epsilons)->delimiter(',')->capture_default_str();
  prof_cmd->add_option("--dx", prof.dx)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*calibrate_cmd) cmd_calibrate(cal);
    if (*run_cmd) cmd_run(run);
    if (*conv_cmd) cmd_convergence(conv);
    if (*stab_cmd) cmd_stability(stab);
    if (*eq_cmd) cmd_equivalence(eq);
    if (*sweep_cmd) cmd_sweep(sweep);
    if (*prof_cmd) cmd_profile(prof);
  } catch (const NoRealRoot& e) {
    return fail(kInfeasible, e.what());
  } catch (const PropertyViolated& e) {
    return fail(kViolated, e.what());
  } catch (const std::exception& e) {
    return fail(kUsage, e.what());
  }
  return kOk;
}
