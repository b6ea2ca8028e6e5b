#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include <json.hpp>

#include "lcr/dynamics.hpp"
#include "lcr/mapper_coach.hpp"

namespace lcr {

/// One serializable source of truth for a whole run. Defaults reproduce the
/// reference experiment: N=20000 points at r=3.99, beta=0.2, split 9999/10000,
/// two hidden layers of 20 units per subnetwork, batch 2000, 4000 epochs,
/// ADAM at lr 1e-3, 20 restarts.
struct ExperimentConfig {
  LogisticSystemParams system;
  std::size_t n_points = 20000;
  std::size_t burn_in = 1000;
  std::size_t n_train = 9999;
  std::size_t hidden_width = 20;
  std::size_t hidden_depth = 2;
  std::size_t batch_size = 2000;
  std::size_t epochs = 4000;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t n_restarts = 20;
  std::uint64_t master_seed = 1;
  std::size_t jobs = 0;  ///< 0 = one worker per hardware thread

  /// Throws ConfigError on any invalid field combination.
  void validate() const;

  /// The per-run training slice of this config (seed left to the caller).
  TrainingConfig training_config() const;

  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Applies the keys present in `j` on top of `base`. Unknown keys throw
/// ConfigError so typos cannot silently fall back to defaults.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  ExperimentConfig base = {});

ExperimentConfig load_config(const std::filesystem::path& path,
                             ExperimentConfig base = {});
void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg);

}  // namespace lcr
