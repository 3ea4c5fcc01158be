#include "antiwick/symbol_io.hpp"

#include <cmath>

#include "antiwick/errors.hpp"

namespace antiwick {

namespace {

using nlohmann::json;

std::vector<int> multi_index(const json& j, int dim, const std::string& path) {
  if (j.is_number_integer()) {
    if (dim != 1) throw ConfigError(path, "scalar multi-index only allowed for dim = 1");
    return {j.get<int>()};
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(path, "multi-index must be an integer or an array of length dim");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ConfigError(path, "multi-index entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

double number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing required field");
  if (!j.at(key).is_number()) throw ConfigError(path + "/" + key, "must be a number");
  return j.at(key).get<double>();
}

std::vector<XWTerm> xw_terms(const json& arr, int dim, const std::string& path) {
  if (!arr.is_array()) throw ConfigError(path, "expected an array of [p, q, coeff] triples");
  std::vector<XWTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& t = arr[i];
    const std::string p = path + "/" + std::to_string(i);
    if (!t.is_array() || t.size() != 3 || !t[2].is_number()) throw ConfigError(p, "expected [p, q, coeff]");
    out.push_back({multi_index(t[0], dim, p + "/0"), multi_index(t[1], dim, p + "/1"), t[2].get<double>()});
  }
  return out;
}

json index_json(const std::vector<int>& v) {
  if (v.size() == 1) return v[0];
  return json(v);
}

}  // namespace

Symbol symbol_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "symbol record must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError(path + "/kind", "missing or not a string");
  const std::string kind = j["kind"].get<std::string>();
  int dim = 1;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
      throw ConfigError(path + "/dim", "must be a positive integer");
    dim = j["dim"].get<int>();
  }

  Symbol s = Symbol::constant(0.0, dim);
  try {
    if (kind == "constant") {
      s = Symbol::constant(number(j, "value", path), dim);
    } else if (kind == "polynomial") {
      if (!j.contains("terms") || !j["terms"].is_array()) throw ConfigError(path + "/terms", "expected an array");
      std::vector<ZTerm> terms;
      for (std::size_t i = 0; i < j["terms"].size(); ++i) {
        const auto& t = j["terms"][i];
        const std::string p = path + "/terms/" + std::to_string(i);
        if (!t.is_array() || t.size() < 3 || t.size() > 4 || !t[2].is_number() ||
            (t.size() == 4 && !t[3].is_number()))
          throw ConfigError(p, "expected [alpha, beta, re] or [alpha, beta, re, im]");
        const double im = t.size() == 4 ? t[3].get<double>() : 0.0;
        terms.push_back({multi_index(t[0], dim, p + "/0"), multi_index(t[1], dim, p + "/1"),
                         {t[2].get<double>(), im}});
      }
      s = Symbol::polynomial(std::move(terms), dim);
    } else if (kind == "polynomial_xw") {
      if (!j.contains("terms")) throw ConfigError(path + "/terms", "missing required field");
      s = Symbol::polynomial_xw(xw_terms(j["terms"], dim, path + "/terms"), dim);
    } else if (kind == "abs_power") {
      if (!j.contains("P")) throw ConfigError(path + "/P", "missing required field");
      s = Symbol::abs_power(xw_terms(j["P"], dim, path + "/P"), number(j, "beta", path), dim);
    } else if (kind == "radial_power") {
      s = Symbol::radial_power(number(j, "beta", path), dim);
    } else if (kind == "builtin") {
      if (!j.contains("name") || !j["name"].is_string()) throw ConfigError(path + "/name", "missing or not a string");
      const std::string name = j["name"].get<std::string>();
      if (name == "exp_norm") {
        s = Symbol::radial([](double r2) { return std::exp(std::sqrt(r2)); }, dim);
      } else if (name == "gaussian") {
        s = Symbol::radial([](double r2) { return std::exp(-r2); }, dim);
      } else if (name == "exp_x") {
        s = Symbol::generic([](std::span<const double> z, double) { return std::exp(z[0]); }, dim);
      } else {
        throw ConfigError(path + "/name", "unknown builtin symbol '" + name + "'");
      }
    } else {
      throw ConfigError(path + "/kind", "unknown symbol kind '" + kind + "'");
    }
  } catch (const ValidationError& e) {
    throw ConfigError(path, e.what());
  }

  if (j.contains("shift")) {
    if (!j["shift"].is_number()) throw ConfigError(path + "/shift", "must be a number");
    s = plus_constant(s, j["shift"].get<double>());
  }
  if (j.contains("floor")) {
    if (!j["floor"].is_number()) throw ConfigError(path + "/floor", "must be a number");
    s = s.with_floor(j["floor"].get<double>());
  }
  if (j.contains("semiclassical")) {
    const auto& sc = j["semiclassical"];
    const std::string p = path + "/semiclassical";
    if (!sc.is_object()) throw ConfigError(p, "must be an object");
    if (!sc.contains("N0") || !sc["N0"].is_number_integer()) throw ConfigError(p + "/N0", "missing or not an integer");
    try {
      s = s.with_semiclassical({number(sc, "m", p), number(sc, "rho", p), sc["N0"].get<int>()});
    } catch (const ValidationError& e) {
      throw ConfigError(p, e.what());
    }
  }
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw ConfigError(path + "/id", "must be a string");
    s = s.with_id(j["id"].get<std::string>());
  }
  return s;
}

json symbol_to_json(const Symbol& s) {
  json j;
  j["id"] = s.id();
  j["dim"] = s.dim();
  switch (s.kind()) {
    case SymbolKind::constant:
      j["kind"] = "constant";
      j["value"] = s.constant_value();
      break;
    case SymbolKind::polynomial: {
      j["kind"] = "polynomial";
      json terms = json::array();
      for (const auto& t : s.z_terms()) {
        json row = {index_json(t.alpha), index_json(t.beta), t.coeff.real()};
        if (t.coeff.imag() != 0.0) row.push_back(t.coeff.imag());
        terms.push_back(row);
      }
      j["terms"] = terms;
      break;
    }
    case SymbolKind::abs_power: {
      j["kind"] = "abs_power";
      json p = json::array();
      for (const auto& t : s.base_polynomial()) p.push_back({index_json(t.x_pow), index_json(t.w_pow), t.coeff});
      j["P"] = p;
      j["beta"] = s.exponent();
      break;
    }
    case SymbolKind::radial:
      j["kind"] = "radial";
      break;
    case SymbolKind::generic:
      j["kind"] = "generic";
      break;
  }
  if (s.floor() != 0.0 && s.kind() != SymbolKind::constant) j["floor"] = s.floor();
  if (s.semiclassical()) {
    const auto& sc = *s.semiclassical();
    j["semiclassical"] = {{"m", sc.m}, {"rho", sc.rho}, {"N0", sc.n0}};
  }
  return j;
}

}  // namespace antiwick
