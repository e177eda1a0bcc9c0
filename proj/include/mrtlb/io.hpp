#pragma once

// CSV and JSON encodings of the library's reports. CSV uses commas, LF line
// endings and 17 significant digits independent of the global locale.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrtlb/calibration.hpp"
#include "mrtlb/stability.hpp"
#include "mrtlb/verification.hpp"

namespace mrtlb::io {

/// %.17g without locale influence.
std::string format_real(double v);

nlohmann::json to_json(const CalibrationResult& r);
nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const std::vector<ConvergenceReport>& reports);
nlohmann::json to_json(const std::vector<SweepRow>& rows);
nlohmann::json to_json(const std::vector<Profile>& profiles);

/// Header `x,phi`.
void write_field_csv(std::ostream& os, std::span<const double> x, std::span<const double> phi);

/// Header `epsilon,order,dx,dt,rmse,rate`; rate is empty on the coarsest row.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports);

/// Header `epsilon,x,phi_numeric,phi_analytic`.
void write_profile_csv(std::ostream& os, const std::vector<Profile>& profiles);

/// Header `epsilon,omega0,s1,s2,status`; parameters are empty on failed rows.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Header `epsilon,omega0,s1,s2,residual_second,residual_fourth,order`.
void write_calibration_csv(std::ostream& os, const CalibrationResult& r);

}  // namespace mrtlb::io
