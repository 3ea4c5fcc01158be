#pragma once

// GapReport serialization. CSV columns:
//   symbol_id,h,N_b,spec_bottom,lambda,lambda_ess,lambda_sup,lambda_sup_ess,
//   ratio,ess_ratio,converged,caveats,runtime_ms
// Numbers use 12 significant digits; caveats are joined with ';'.
// JSON output is an array of row objects; non-finite numbers are written as
// the strings "nan", "inf", "-inf".

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "antiwick/harness.hpp"

namespace antiwick {

enum class ReportFormat { csv, json };

std::string to_csv(const std::vector<GapReport>& rows);
nlohmann::json to_json(const std::vector<GapReport>& rows);
std::vector<GapReport> reports_from_json(const nlohmann::json& doc);

/// Writes rows to path. Throws ValidationError for an empty report and Error
/// (message includes the path) on I/O failure.
void emit_report(const std::vector<GapReport>& rows, ReportFormat format, const std::string& path);

/// Long-form (shell_radius, value) CSV.
void write_profile_csv(const std::vector<std::pair<double, double>>& profile, const std::string& path);

/// "%.12g", with nan / inf / -inf spelled out.
std::string format_number(double v);

}  // namespace antiwick
