#include "antiwick/operator_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "antiwick/errors.hpp"

namespace antiwick {

namespace {

void write_block(std::FILE* out, const Eigen::MatrixXd& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) std::fprintf(out, c == 0 ? "%.17g" : " %.17g", m(r, c));
    std::fputc('\n', out);
  }
}

Eigen::MatrixXd read_block(std::istream& in, int n, const std::string& path) {
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!(in >> m(r, c))) throw ValidationError(path + ": truncated matrix at row " + std::to_string(r));
  return m;
}

}  // namespace

void write_operator(const HermiteOperator& op, const std::string& path) {
  nlohmann::json hdr;
  hdr["symbol_id"] = op.symbol_id();
  hdr["h"] = op.h();
  hdr["N_b"] = op.size();
  hdr["route"] = to_string(op.route());
  hdr["complex"] = !op.is_real();
  hdr["exact_block"] = op.exact_block();
  if (op.phase_grid()) {
    const auto& g = *op.phase_grid();
    hdr["grid"] = {{"x_center", g.x_center},     {"w_center", g.w_center},
                   {"x_half", g.x_half},         {"w_half", g.w_half},
                   {"x_points", g.x_points},     {"w_points", g.w_points},
                   {"tail_mass", g.tail_mass},   {"spatial_points", op.spatial_points()},
                   {"spatial_half_width", op.spatial_half_width()}};
  } else {
    hdr["grid"] = nullptr;
  }
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error("cannot open " + path + " for writing");
  std::fprintf(out, "%s\n", hdr.dump().c_str());
  write_block(out, op.matrix().real());
  if (!op.is_real()) {
    std::fprintf(out, "imag\n");
    write_block(out, op.matrix().imag());
  }
  if (std::fclose(out) != 0) throw Error("write failed for " + path);
}

HermiteOperator read_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  nlohmann::json hdr;
  try {
    hdr = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": bad header: " + e.what());
  }
  const int n = hdr.at("N_b").get<int>();
  if (n < 1) throw ValidationError(path + ": N_b must be positive");
  const std::string route = hdr.at("route").get<std::string>();
  AssemblyRoute r = AssemblyRoute::quadrature;
  if (route == "polynomial") r = AssemblyRoute::polynomial;
  else if (route == "radial") r = AssemblyRoute::radial;
  else if (route != "quadrature") throw ValidationError(path + ": unknown route " + route);
  Eigen::MatrixXcd m = read_block(in, n, path).cast<std::complex<double>>();
  if (hdr.value("complex", false)) {
    std::string tag;
    if (!(in >> tag) || tag != "imag") throw ValidationError(path + ": missing imaginary block");
    m.imag() = read_block(in, n, path);
  }
  HermiteOperator op(std::move(m), hdr.at("h").get<double>(), r, hdr.value("symbol_id", std::string()));
  op.set_exact_block(hdr.value("exact_block", n));
  return op;
}

}  // namespace antiwick
