#include "antiwick/state_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "antiwick/errors.hpp"

namespace antiwick {

namespace {

constexpr char kMagic[8] = {'A', 'W', 'S', 'T', 'A', 'T', 'E', '1'};

StateVector as_samples(const StateVector& f) {
  if (f.representation() == StateVector::Representation::samples) return f;
  return f.sampled_on(SpatialGrid::for_modes(f.basis_h(), static_cast<int>(f.coefficients().size())));
}

}  // namespace

void write_state_text(const StateVector& f, const std::string& path) {
  const StateVector s = as_samples(f);
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error("cannot open " + path + " for writing");
  std::fprintf(out, "# antiwick-state %.17g %d %d %.17g\n", s.grid().half_width(), s.grid().points(), s.dim(), s.h());
  for (const auto& v : s.samples()) std::fprintf(out, "%.17g %.17g\n", v.real(), v.imag());
  if (std::fclose(out) != 0) throw Error("write failed for " + path);
}

void write_state_binary(const StateVector& f, const std::string& path) {
  const StateVector s = as_samples(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  const double L = s.grid().half_width();
  const std::int64_t M = s.grid().points();
  const std::int32_t d = s.dim();
  const double h = s.h();
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&L), sizeof L);
  out.write(reinterpret_cast<const char*>(&M), sizeof M);
  out.write(reinterpret_cast<const char*>(&d), sizeof d);
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  for (const auto& v : s.samples()) {
    const double pair[2] = {v.real(), v.imag()};
    out.write(reinterpret_cast<const char*>(pair), sizeof pair);
  }
  if (!out) throw Error("write failed for " + path);
}

StateVector read_state_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  std::istringstream hdr(line);
  std::string hash, tag;
  double L = 0.0, h = 0.0;
  int M = 0, d = 0;
  if (!(hdr >> hash >> tag >> L >> M >> d >> h) || hash != "#" || tag != "antiwick-state")
    throw ValidationError(path + ": malformed header");
  if (d != 1) throw UnsupportedDimension(path + ": only d = 1 states are supported");
  std::vector<std::complex<double>> v;
  v.reserve(M > 0 ? M : 0);
  double re, im;
  while (in >> re >> im) v.emplace_back(re, im);
  if (!in.eof()) throw ValidationError(path + ": malformed sample line " + std::to_string(v.size() + 2));
  if (static_cast<int>(v.size()) != M)
    throw ValidationError(path + ": header declares " + std::to_string(M) + " samples, found " +
                          std::to_string(v.size()));
  return StateVector(SpatialGrid(L, M), std::move(v), h);
}

StateVector read_state_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  double L = 0.0, h = 0.0;
  std::int64_t M = 0;
  std::int32_t d = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&L), sizeof L);
  in.read(reinterpret_cast<char*>(&M), sizeof M);
  in.read(reinterpret_cast<char*>(&d), sizeof d);
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw ValidationError(path + ": not a state file");
  if (d != 1) throw UnsupportedDimension(path + ": only d = 1 states are supported");
  if (M < 8 || M > (std::int64_t{1} << 31)) throw ValidationError(path + ": implausible sample count");
  std::vector<std::complex<double>> v(M);
  for (auto& x : v) {
    double pair[2];
    in.read(reinterpret_cast<char*>(pair), sizeof pair);
    x = {pair[0], pair[1]};
  }
  if (!in) throw ValidationError(path + ": truncated sample block");
  return StateVector(SpatialGrid(L, static_cast<int>(M)), std::move(v), h);
}

}  // namespace antiwick
