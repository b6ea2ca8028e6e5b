#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "lcr/config.hpp"
#include "lcr/experiment.hpp"

namespace lcr {

/// Where a run's outputs go: a fresh path is created and used as-is; an
/// existing directory gets a fresh timestamped subdirectory unless `force`,
/// which reuses the directory in place.
std::filesystem::path resolve_output_dir(const std::filesystem::path& requested,
                                         bool force);

/// Simulates per config and writes the `t,x,y,z` CSV. Prints the row count
/// and seed. The simulation seed is derived from cfg.master_seed.
void cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_csv,
                  std::ostream& out);

struct TrainOutcome {
  std::filesystem::path out_dir;
  EvaluationReport report;
  bool any_converged = false;
};

/// The full protocol: simulate (or load `data`), embed, split, run restarts,
/// write the effective config, report JSON, best model, learning curves and
/// plot-ready pair CSVs into the resolved output directory.
TrainOutcome cmd_train(const ExperimentConfig& cfg,
                       const std::optional<std::filesystem::path>& data,
                       const std::filesystem::path& out_dir, bool force,
                       std::ostream& out);

struct ReconstructOutcome {
  double r2 = 0.0;
  int slope_sign = 0;
  std::size_t n_samples = 0;
};

/// Runs the mapper of a saved model over a trajectory or dataset CSV, writes
/// the aligned (t, z_truth, z_hat) CSV plus a companion JSON with the r2 and
/// regression slope sign.
ReconstructOutcome cmd_reconstruct(const std::filesystem::path& model_path,
                                   const std::filesystem::path& data_path,
                                   const std::filesystem::path& out_csv,
                                   const LogisticSystemParams& params,
                                   std::ostream& out);

/// Prints a human-readable summary of a report JSON. Throws
/// InsufficientDataError for a report with no records.
void cmd_report(const std::filesystem::path& report_path, std::ostream& out);

}  // namespace lcr
