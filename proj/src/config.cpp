#include "lcr/config.hpp"

#include "lcr/model_io.hpp"

namespace lcr {

using nlohmann::json;

void ExperimentConfig::validate() const {
  system.validate();
  if (n_points < 2) throw ConfigError("n_points must be at least 2");
  const std::size_t n_samples = n_points - 1;
  if (n_train == 0 || n_train >= n_samples) {
    throw ConfigError("n_train must lie strictly between 0 and n_points-1");
  }
  training_config().validate(n_train);
  if (n_restarts < 1) throw ConfigError("n_restarts must be at least 1");
}

TrainingConfig ExperimentConfig::training_config() const {
  TrainingConfig cfg;
  cfg.batch_size = batch_size;
  cfg.epochs = epochs;
  cfg.learning_rate = learning_rate;
  cfg.adam_beta1 = adam_beta1;
  cfg.adam_beta2 = adam_beta2;
  cfg.adam_epsilon = adam_epsilon;
  cfg.hidden_width = hidden_width;
  cfg.hidden_depth = hidden_depth;
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["r"] = cfg.system.r;
  j["beta_xz"] = cfg.system.beta_xz;
  j["beta_yz"] = cfg.system.beta_yz;
  j["n_points"] = cfg.n_points;
  j["burn_in"] = cfg.burn_in;
  j["n_train"] = cfg.n_train;
  j["hidden_width"] = cfg.hidden_width;
  j["hidden_depth"] = cfg.hidden_depth;
  j["batch_size"] = cfg.batch_size;
  j["epochs"] = cfg.epochs;
  j["learning_rate"] = cfg.learning_rate;
  j["adam_beta1"] = cfg.adam_beta1;
  j["adam_beta2"] = cfg.adam_beta2;
  j["adam_epsilon"] = cfg.adam_epsilon;
  j["n_restarts"] = cfg.n_restarts;
  j["master_seed"] = cfg.master_seed;
  j["jobs"] = cfg.jobs;
  return j;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig base) {
  if (!j.is_object()) throw ConfigError("config document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "r") {
        base.system.r = value.get<double>();
      } else if (key == "beta_xz") {
        base.system.beta_xz = value.get<double>();
      } else if (key == "beta_yz") {
        base.system.beta_yz = value.get<double>();
      } else if (key == "n_points") {
        base.n_points = value.get<std::size_t>();
      } else if (key == "burn_in") {
        base.burn_in = value.get<std::size_t>();
      } else if (key == "n_train") {
        base.n_train = value.get<std::size_t>();
      } else if (key == "hidden_width") {
        base.hidden_width = value.get<std::size_t>();
      } else if (key == "hidden_depth") {
        base.hidden_depth = value.get<std::size_t>();
      } else if (key == "batch_size") {
        base.batch_size = value.get<std::size_t>();
      } else if (key == "epochs") {
        base.epochs = value.get<std::size_t>();
      } else if (key == "learning_rate") {
        base.learning_rate = value.get<double>();
      } else if (key == "adam_beta1") {
        base.adam_beta1 = value.get<double>();
      } else if (key == "adam_beta2") {
        base.adam_beta2 = value.get<double>();
      } else if (key == "adam_epsilon") {
        base.adam_epsilon = value.get<double>();
      } else if (key == "n_restarts") {
        base.n_restarts = value.get<std::size_t>();
      } else if (key == "master_seed") {
        base.master_seed = value.get<std::uint64_t>();
      } else if (key == "jobs") {
        base.jobs = value.get<std::size_t>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    } catch (const json::exception&) {
      throw ConfigError("bad value for config key: " + key);
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             ExperimentConfig base) {
  return config_from_json(load_json(path), base);
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg) {
  save_json(path, config_to_json(cfg));
}

}  // namespace lcr
