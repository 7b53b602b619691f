#include "pcf/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pcf/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte-swapping is not implemented");

namespace pcf {

namespace {

const char* kCsvHeader =
    "t,E,E_mod,virial_I,window_energy,sup_Ltil,min_Lambda,continuity_residual,ineq_margin";

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("write_timeseries_csv: cannot open " + path.string());
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << fmt17(r.t) << ',' << fmt17(r.E) << ',' << fmt17(r.E_mod) << ',' << fmt17(r.virial_I)
        << ',' << fmt17(r.window_energy) << ',' << fmt17(r.sup_Ltil) << ','
        << fmt17(r.min_Lambda) << ',' << fmt17(r.continuity_residual) << ','
        << fmt17(r.ineq_margin) << "\n";
  }
}

std::vector<DiagnosticsRecord> read_timeseries_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("read_timeseries_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw InvalidInput("read_timeseries_csv: unexpected header in " + path.string());
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    DiagnosticsRecord r;
    char comma;
    ss >> r.t >> comma >> r.E >> comma >> r.E_mod >> comma >> r.virial_I >> comma >>
        r.window_energy >> comma >> r.sup_Ltil >> comma >> r.min_Lambda >> comma >>
        r.continuity_residual >> comma >> r.ineq_margin;
    if (!ss) throw InvalidInput("read_timeseries_csv: malformed row: " + line);
    out.push_back(r);
  }
  return out;
}

void write_snapshot(const std::filesystem::path& path, const FieldState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("write_snapshot: cannot open " + path.string());
  out.write("PCF1", 4);
  const uint64_t nx = state.Ltil.size();
  out.write(reinterpret_cast<const char*>(&nx), sizeof nx);
  out.write(reinterpret_cast<const char*>(&state.t), sizeof state.t);
  out.write(reinterpret_cast<const char*>(&state.lambda_bg), sizeof state.lambda_bg);
  for (const auto* arr : {&state.Ltil, &state.Ltil_t, &state.phi, &state.phi_t})
    out.write(reinterpret_cast<const char*>(arr->data()),
              static_cast<std::streamsize>(arr->size() * sizeof(double)));
  if (!out) throw InvalidInput("write_snapshot: write failed for " + path.string());
}

FieldState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("read_snapshot: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "PCF1", 4) != 0)
    throw InvalidInput("read_snapshot: bad magic in " + path.string());
  uint64_t nx = 0;
  FieldState s;
  in.read(reinterpret_cast<char*>(&nx), sizeof nx);
  in.read(reinterpret_cast<char*>(&s.t), sizeof s.t);
  in.read(reinterpret_cast<char*>(&s.lambda_bg), sizeof s.lambda_bg);
  for (auto* arr : {&s.Ltil, &s.Ltil_t, &s.phi, &s.phi_t}) {
    arr->resize(nx);
    in.read(reinterpret_cast<char*>(arr->data()),
            static_cast<std::streamsize>(nx * sizeof(double)));
  }
  if (!in) throw InvalidInput("read_snapshot: truncated file " + path.string());
  return s;
}

}  // namespace pcf
