#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcf/diagnostics.hpp"
#include "pcf/initdata.hpp"
#include "pcf/solver.hpp"

namespace pcf {

enum class ExperimentKind { run, soliton_check, virial_study, decay_study, convergence, sweep };

std::string to_string(ExperimentKind k);

struct GridConfig {
  double x_min = -50.0;
  double x_max = 50.0;
  int nx = 1024;
};

struct InitialDataConfig {
  // tagged union over the initial-data constructors
  std::string type = "bump";  // bump | traveling-wave | singular-soliton | finite-energy-soliton
  double lambda_bg = 1.0;

  BumpSpec bump_L{0.01, 0.0, 5.0, BumpShape::smooth_compact};
  BumpSpec bump_phi{0.01, 0.0, 5.0, BumpShape::smooth_compact};

  std::string direction = "right";  // traveling-wave
  BumpSpec wave_h{0.1, 0.0, 2.0, BumpShape::smooth_compact};
  BumpSpec wave_k{0.1, 0.0, 2.0, BumpShape::smooth_compact};

  double mu = 2.0;       // solitons
  double epsilon = 0.05; // finite-energy seed amplitude
  BumpSpec theta{1.0, 0.0, 2.0, BumpShape::smooth_compact};
};

struct DiagnosticsConfig {
  std::vector<double> v_list{0.0};
  double delta = 0.5;
  std::string lambda_weight = "t-log2";  // or "t2-log"
  bool weighted_norms = false;
};

struct DecayStudyConfig {
  double v = 0.0;
  double t_early = 4.0;
  double t_late = 40.0;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::run;
  GridConfig grid;
  SolverConfig solver;
  InitialDataConfig initial_data;
  DiagnosticsConfig diagnostics;
  DecayStudyConfig decay;
  int levels = 3;                         // convergence
  std::vector<double> sweep_epsilons;     // sweep
  std::vector<double> snapshot_times;
  std::string output_dir = "out";
  uint64_t seed = 1;

  Grid make_grid() const { return Grid(grid.x_min, grid.x_max, grid.nx, solver.cfl); }
  FieldState make_initial_state(const Grid& g) const;
  LambdaWeightKind lambda_weight_kind() const;
};

/// Parses and validates a JSON config: unknown keys are rejected with their
/// path, numeric bounds (|v| < 1, cfl in (0,1], ...) are named explicitly,
/// and all defaults are materialized in the result.
ExperimentConfig parse_config(const std::string& text);

/// Canonical JSON with every field spelled out; parse(emit(c)) == c.
std::string emit_config(const ExperimentConfig& config);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace pcf
