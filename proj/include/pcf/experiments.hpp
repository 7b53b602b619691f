#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "pcf/config.hpp"
#include "pcf/diagnostics.hpp"
#include "pcf/solver.hpp"

namespace pcf {

/// Runs indices 0..n-1 on a small thread pool; PCF_THREADS caps the worker
/// count. Exceptions from jobs are rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

struct EvolutionArtifacts {
  RunSummary summary;
  std::vector<DiagnosticsRecord> records;
  double initial_energy = 0.0;
  double max_rel_energy_drift = 0.0;
  double weighted_E0 = 0.0;        // E(0) + F(0), when weighted norms are enabled
  double weighted_monitor_max = 0.0;  // max_t (E(t) + F(t))
};

/// Time evolution with the full per-record diagnostics pipeline (the `run`
/// experiment without the file output). on_record, when set, sees every
/// recorded state after its diagnostics row is computed.
EvolutionArtifacts run_evolution(const ExperimentConfig& config, const Grid& grid,
                                 const FieldState& initial,
                                 const Observer& on_record = {});

/// Dispatches on config.experiment, writes resolved_config.json,
/// timeseries.csv / snapshots/ / summary.json (as applicable) under
/// config.output_dir, and returns the process exit status: 0 on success,
/// 2 on singularity stop, 3 on overflow stop.
int run_experiment(const ExperimentConfig& config);

}  // namespace pcf
