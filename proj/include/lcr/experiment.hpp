#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcr/embedding.hpp"
#include "lcr/mapper_coach.hpp"

namespace lcr {

enum class Cluster { kFailed, kLocalMinimum, kConverged };

const char* to_string(Cluster c);
Cluster cluster_from_string(const std::string& name);

/// Test-r2 thresholds used to group restarts into outcome clusters.
struct ClusterThresholds {
  double converged = 0.9;     ///< r2_prediction >= converged  -> converged
  double failed_below = 0.1;  ///< r2_prediction <  failed_below -> failed
};

struct RunRecord {
  std::size_t restart_index = 0;
  std::uint64_t seed = 0;
  std::vector<double> learning_curve;  ///< one entry per epoch
  double final_train_loss = 0.0;
  double r2_prediction = 0.0;
  double r2_reconstruction = 0.0;
  int reconstruction_slope_sign = 0;  ///< {+1, -1, 0}
  Cluster cluster = Cluster::kFailed;
};

struct EvaluationReport {
  std::vector<RunRecord> records;
  std::size_t best_run = 0;  ///< max r2_prediction, ties to the lowest index
  std::size_t n_failed = 0;
  std::size_t n_local_minimum = 0;
  std::size_t n_converged = 0;
  bool has_correlation = false;
  double pred_rec_correlation = 0.0;  ///< over non-failed runs
  bool has_oracle_ceiling = false;
  double oracle_ceiling = 0.0;
};

/// Pearson correlation coefficient with sample statistics; returns 0 when
/// either series has zero variance. Throws LengthError on mismatched lengths
/// or fewer than 2 samples.
double pearson_r(std::span<const double> a, std::span<const double> b);

/// Square of the Pearson correlation coefficient, clamped into [0, 1].
/// Affine-invariant in either argument; zero-variance series score 0.
double r_squared(std::span<const double> a, std::span<const double> b);

/// Sign of the covariance between truth and estimate: +1, -1, or 0.
int slope_sign(std::span<const double> truth, std::span<const double> estimate);

Cluster classify(double r2_prediction, const ClusterThresholds& thresholds = {});
void classify_runs(std::vector<RunRecord>& records,
                   const ClusterThresholds& thresholds = {});

/// Pearson correlation between r2_prediction and r2_reconstruction over
/// non-failed runs. Throws InsufficientDataError with fewer than 2 of them.
double pred_vs_rec_correlation(const std::vector<RunRecord>& records);

/// r2 between the analytic inverse applied to the embedded y rows and the
/// held-out z truth: the ceiling no learned mapper can beat. Propagates
/// SingularInputError from the oracle and LengthError from r_squared.
double oracle_ceiling(const EmbeddedDataset& ds);

/// Trains n_restarts fresh networks with seeds mixed from master_seed
/// (restart i uses mix_seed(master_seed, i)), evaluates each on the test set
/// and assembles the report. cfg.seed is ignored; per-run seeds are derived.
/// jobs > 1 runs restarts on that many threads with results identical to
/// sequential execution. A run with non-finite outputs is recorded as failed
/// with both r2 scores 0. When trained_out is non-null it receives the
/// trained network of every restart, indexed by restart.
EvaluationReport run_restarts(const EmbeddedDataset& train_set,
                              const EmbeddedDataset& test_set,
                              const TrainingConfig& cfg, std::size_t n_restarts,
                              std::uint64_t master_seed, std::size_t jobs = 1,
                              const ClusterThresholds& thresholds = {},
                              std::vector<MapperCoachNet>* trained_out = nullptr);

}  // namespace lcr
