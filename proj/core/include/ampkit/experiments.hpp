#pragma once

#include <string>
#include <vector>

#include "ampkit/config.hpp"

namespace ampkit {

/// Outcome of one CLI command: the files written under config.out_dir plus
/// the JSON summary text (also written to summary.json).
struct CommandResult {
  std::vector<std::string> files;
  std::string summary_json;
};

/// Fig. 3-style convergence runs: AMP on the configured operator per seed,
/// traces with per-block MSE, plus the matching state-evolution trajectory.
CommandResult cmd_cs_run(const ExperimentConfig& config);

/// Fig. 2-style empirical phase diagram: success fraction per (rho, alpha).
CommandResult cmd_cs_phase(const ExperimentConfig& config);

/// State-evolution fixed points over a (rho, alpha) grid.
CommandResult cmd_se_phase(const ExperimentConfig& config);

/// Fig. 5-style timing: operator vs dense wall-clock to reach the target MSE.
CommandResult cmd_bench(const ExperimentConfig& config);

/// Single-rate superposition-code transmissions, one per seed; optionally a
/// binary payload round trip.
CommandResult cmd_code_run(const ExperimentConfig& config);

/// Fig. 8-style SER / block-error-rate sweep over a rate grid.
CommandResult cmd_code_sweep(const ExperimentConfig& config);

/// Dispatch on config.experiment.
CommandResult run_experiment(const ExperimentConfig& config);

}  // namespace ampkit
