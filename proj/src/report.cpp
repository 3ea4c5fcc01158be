#include "antiwick/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "antiwick/errors.hpp"

namespace antiwick {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Quote a CSV field when it contains a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double read_number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw ValidationError(std::string("report field ") + key + ": unrecognized value " + s);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace

std::string to_csv(const std::vector<GapReport>& rows) {
  std::string out =
      "symbol_id,h,N_b,spec_bottom,lambda,lambda_ess,lambda_sup,lambda_sup_ess,ratio,ess_ratio,converged,caveats,"
      "runtime_ms\n";
  for (const auto& r : rows) {
    std::vector<std::string> cav = r.caveats;
    if (!r.error.empty()) cav.push_back("error=" + r.error);
    out += csv_field(r.symbol_id);
    out += "," + format_number(r.h);
    out += "," + std::to_string(r.n_b);
    for (double v : {r.spec_bottom, r.lambda, r.lambda_ess, r.lambda_sup, r.lambda_sup_ess, r.ratio, r.ess_ratio})
      out += "," + format_number(v);
    out += r.converged ? ",true" : ",false";
    out += "," + csv_field(join(cav, ';'));
    out += "," + format_number(r.runtime_ms) + "\n";
  }
  return out;
}

json to_json(const std::vector<GapReport>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["symbol_id"] = r.symbol_id;
    j["h"] = number(r.h);
    j["N_b"] = r.n_b;
    j["spec_bottom"] = number(r.spec_bottom);
    j["lambda"] = number(r.lambda);
    j["lambda_ess"] = number(r.lambda_ess);
    j["lambda_sup"] = number(r.lambda_sup);
    j["lambda_sup_ess"] = number(r.lambda_sup_ess);
    j["ratio"] = number(r.ratio);
    j["ess_ratio"] = number(r.ess_ratio);
    j["converged"] = r.converged;
    j["caveats"] = r.caveats;
    j["runtime_ms"] = number(r.runtime_ms);
    j["error"] = r.error;
    j["ess_bottom"] = number(r.ess_bottom);
    j["slack"] = number(r.slack);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<GapReport> reports_from_json(const json& doc) {
  if (!doc.is_array()) throw ValidationError("report document must be an array");
  std::vector<GapReport> rows;
  try {
    for (const auto& j : doc) {
      GapReport r;
      r.symbol_id = j.at("symbol_id").get<std::string>();
      r.h = read_number(j, "h");
      r.n_b = j.at("N_b").get<int>();
      r.spec_bottom = read_number(j, "spec_bottom");
      r.lambda = read_number(j, "lambda");
      r.lambda_ess = read_number(j, "lambda_ess");
      r.lambda_sup = read_number(j, "lambda_sup");
      r.lambda_sup_ess = read_number(j, "lambda_sup_ess");
      r.ratio = read_number(j, "ratio");
      r.ess_ratio = read_number(j, "ess_ratio");
      r.converged = j.at("converged").get<bool>();
      r.caveats = j.at("caveats").get<std::vector<std::string>>();
      r.runtime_ms = read_number(j, "runtime_ms");
      r.error = j.value("error", std::string());
      r.ess_bottom = j.contains("ess_bottom") ? read_number(j, "ess_bottom") : std::nan("");
      r.slack = j.contains("slack") ? read_number(j, "slack") : std::nan("");
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
  return rows;
}

void emit_report(const std::vector<GapReport>& rows, ReportFormat format, const std::string& path) {
  if (rows.empty()) throw ValidationError("refusing to write an empty report to " + path);
  write_file(path, format == ReportFormat::csv ? to_csv(rows) : to_json(rows).dump(2) + "\n");
}

void write_profile_csv(const std::vector<std::pair<double, double>>& profile, const std::string& path) {
  std::string out = "shell_radius,value\n";
  for (const auto& [r, v] : profile) out += format_number(r) + "," + format_number(v) + "\n";
  write_file(path, out);
}

}  // namespace antiwick
