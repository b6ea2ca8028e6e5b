#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lcr/dynamics.hpp"
#include "lcr/embedding.hpp"
#include "lcr/experiment.hpp"

namespace lcr {

/// All series files use 17 significant digits so doubles round-trip exactly.
std::string format_double(double value);

/// Header `t,x,y,z`, one row per time index.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Loads a trajectory CSV. Values are required to lie in [0,1] and the series
/// must have at least 2 rows; `params` annotates where the data came from.
Trajectory read_trajectory_csv(const std::filesystem::path& path,
                               const LogisticSystemParams& params);

/// Header `y_t,y_prev,x_prev,x_target,z_truth`.
void write_dataset_csv(const std::filesystem::path& path, const EmbeddedDataset& ds);
EmbeddedDataset read_dataset_csv(const std::filesystem::path& path,
                                 const LogisticSystemParams& params);

/// True when the file's header names a dataset CSV rather than a trajectory.
bool is_dataset_csv(const std::filesystem::path& path);

/// Header `restart,epoch,loss`, all runs concatenated.
void write_learning_curves_csv(const std::filesystem::path& path,
                               const std::vector<RunRecord>& records);

/// Header `restart,seed,final_train_loss,r2_prediction,r2_reconstruction,slope_sign,cluster`.
void write_run_metrics_csv(const std::filesystem::path& path,
                           const std::vector<RunRecord>& records);

/// Two aligned columns under the given header names.
void write_pairs_csv(const std::filesystem::path& path, const std::string& name_a,
                     const std::string& name_b, std::span<const double> a,
                     std::span<const double> b);

/// Three aligned columns: index column `t` plus two named series.
void write_indexed_pairs_csv(const std::filesystem::path& path,
                             const std::string& name_a, const std::string& name_b,
                             std::span<const double> a, std::span<const double> b);

}  // namespace lcr
