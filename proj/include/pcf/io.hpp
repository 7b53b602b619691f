#pragma once

#include <filesystem>
#include <vector>

#include "pcf/diagnostics.hpp"
#include "pcf/field_state.hpp"

namespace pcf {

/// Fixed column order, 17 significant digits (lossless for 64-bit reals).
void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<DiagnosticsRecord>& records);

std::vector<DiagnosticsRecord> read_timeseries_csv(const std::filesystem::path& path);

/// Snapshot layout: magic "PCF1", then little-endian u64 nx, f64 t,
/// f64 lambda_bg, then the four arrays Ltil, Ltil_t, phi, phi_t.
void write_snapshot(const std::filesystem::path& path, const FieldState& state);

FieldState read_snapshot(const std::filesystem::path& path);

}  // namespace pcf
