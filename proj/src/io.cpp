#include "mrtlb/io.hpp"

#include <array>
#include <charconv>

namespace mrtlb::io {

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

nlohmann::json to_json(const CalibrationResult& r) {
  return {{"epsilon", r.epsilon},
          {"omega0", r.omega0},
          {"s1", r.s1},
          {"s2", r.s2},
          {"residual_second", r.residual_second},
          {"residual_fourth", r.residual_fourth},
          {"order", std::string(to_string(r.order))}};
}

nlohmann::json to_json(const StabilityReport& r) {
  return {{"max_spectral_radius", r.max_spectral_radius},
          {"worst_theta", r.worst_theta},
          {"rh_min_margin", r.rh_min_margin},
          {"stable", r.stable},
          {"theta_samples", r.theta_samples}};
}

nlohmann::json to_json(const std::vector<ConvergenceReport>& reports) {
  auto out = nlohmann::json::array();
  for (const auto& r : reports) {
    auto rows = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back({{"dx", row.dx}, {"dt", row.dt}, {"rmse", row.rmse}});
    out.push_back({{"epsilon", r.epsilon},
                   {"order", std::string(to_string(r.order))},
                   {"rows", rows},
                   {"rates", r.rates}});
  }
  return out;
}

nlohmann::json to_json(const std::vector<SweepRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j{{"epsilon", row.epsilon}, {"status", row.status}};
    if (row.result) {
      j["omega0"] = row.result->omega0;
      j["s1"] = row.result->s1;
      j["s2"] = row.result->s2;
    }
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json to_json(const std::vector<Profile>& profiles) {
  auto out = nlohmann::json::array();
  for (const auto& p : profiles) {
    out.push_back({{"epsilon", p.epsilon},
                   {"x", p.field.x},
                   {"phi_numeric", p.field.numeric},
                   {"phi_analytic", p.field.analytic},
                   {"max_deviation", p.max_deviation}});
  }
  return out;
}

void write_field_csv(std::ostream& os, std::span<const double> x, std::span<const double> phi) {
  os << "x,phi\n";
  for (std::size_t j = 0; j < x.size() && j < phi.size(); ++j) {
    os << format_real(x[j]) << ',' << format_real(phi[j]) << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports) {
  os << "epsilon,order,dx,dt,rmse,rate\n";
  for (const auto& r : reports) {
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      const auto& row = r.rows[k];
      os << format_real(r.epsilon) << ',' << to_string(r.order) << ',' << format_real(row.dx)
         << ',' << format_real(row.dt) << ',' << format_real(row.rmse) << ',';
      if (k > 0) os << format_real(r.rates[k - 1]);
      os << '\n';
    }
  }
}

void write_profile_csv(std::ostream& os, const std::vector<Profile>& profiles) {
  os << "epsilon,x,phi_numeric,phi_analytic\n";
  for (const auto& p : profiles) {
    for (std::size_t j = 0; j < p.field.x.size(); ++j) {
      os << format_real(p.epsilon) << ',' << format_real(p.field.x[j]) << ','
         << format_real(p.field.numeric[j]) << ',' << format_real(p.field.analytic[j]) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "epsilon,omega0,s1,s2,status\n";
  for (const auto& row : rows) {
    os << format_real(row.epsilon) << ',';
    if (row.result) {
      os << format_real(row.result->omega0) << ',' << format_real(row.result->s1) << ','
         << format_real(row.result->s2);
    } else {
      os << ",,";
    }
    os << ',' << row.status << '\n';
  }
}

void write_calibration_csv(std::ostream& os, const CalibrationResult& r) {
  os << "epsilon,omega0,s1,s2,residual_second,residual_fourth,order\n";
  os << format_real(r.epsilon) << ',' << format_real(r.omega0) << ',' << format_real(r.s1) << ','
     << format_real(r.s2) << ',' << format_real(r.residual_second) << ','
     << format_real(r.residual_fourth) << ',' << to_string(r.order) << '\n';
}

}  // namespace mrtlb::io
