#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcr/commands.hpp"

namespace {

/// Config-override options shared by the subcommands. Supplied flags are
/// collected into a JSON overlay and applied on top of (defaults + config
/// file), so the precedence is always defaults < file < command line.
struct ConfigCli {
  std::string config_file;
  nlohmann::json overlay = nlohmann::json::object();

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON config file");
    add<double>(cmd, "--r", "r", "logistic growth parameter");
    add<double>(cmd, "--beta-xz", "beta_xz", "coupling strength z->x");
    add<double>(cmd, "--beta-yz", "beta_yz", "coupling strength z->y");
    add<std::uint64_t>(cmd, "--n-points", "n_points", "trajectory length");
    add<std::uint64_t>(cmd, "--burn-in", "burn_in", "discarded transient steps");
    add<std::uint64_t>(cmd, "--n-train", "n_train", "training samples (rest is test)");
    add<std::uint64_t>(cmd, "--width", "hidden_width", "hidden units per layer");
    add<std::uint64_t>(cmd, "--depth", "hidden_depth", "hidden layers per subnetwork");
    add<std::uint64_t>(cmd, "--batch-size", "batch_size", "minibatch size");
    add<std::uint64_t>(cmd, "--epochs", "epochs", "training epochs");
    add<double>(cmd, "--lr", "learning_rate", "ADAM learning rate");
    add<double>(cmd, "--adam-beta1", "adam_beta1", "ADAM beta1");
    add<double>(cmd, "--adam-beta2", "adam_beta2", "ADAM beta2");
    add<double>(cmd, "--adam-epsilon", "adam_epsilon", "ADAM epsilon");
    add<std::uint64_t>(cmd, "--restarts", "n_restarts", "independent training restarts");
    add<std::uint64_t>(cmd, "--seed", "master_seed", "master seed");
    add<std::uint64_t>(cmd, "--jobs", "jobs", "parallel restart workers (0 = auto)");
  }

  lcr::ExperimentConfig resolve() const {
    lcr::ExperimentConfig cfg;
    if (!config_file.empty()) cfg = lcr::load_config(config_file, cfg);
    return lcr::config_from_json(overlay, cfg);
  }

 private:
  template <typename T>
  void add(CLI::App* cmd, const std::string& flag, const std::string& key,
           const std::string& help) {
    cmd->add_option_function<T>(
        flag, [this, key](const T& v) { overlay[key] = v; }, help);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reconstructs the hidden common driver of two observed chaotic series"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "generate a coupled-map trajectory CSV");
  ConfigCli sim_cfg;
  sim_cfg.attach(sim);
  std::string sim_out;
  sim->add_option("--out", sim_out, "output trajectory CSV")->required();

  auto* train = app.add_subcommand(
      "train", "run the multi-restart training protocol and write reports");
  ConfigCli train_cfg;
  train_cfg.attach(train);
  std::string train_data;
  std::string train_out;
  bool train_force = false;
  train->add_option("--data", train_data,
                    "trajectory or dataset CSV (default: simulate per config)");
  train->add_option("--out", train_out, "output directory")->required();
  train->add_flag("--force", train_force, "write into an existing directory");

  auto* rec = app.add_subcommand(
      "reconstruct", "run a saved model's mapper over data and score it");
  ConfigCli rec_cfg;
  rec_cfg.attach(rec);
  std::string rec_model;
  std::string rec_data;
  std::string rec_out;
  rec->add_option("--model", rec_model, "model JSON file")->required();
  rec->add_option("--data", rec_data, "trajectory or dataset CSV")->required();
  rec->add_option("--out", rec_out, "output CSV (t,z_truth,z_hat)")->required();

  auto* rep = app.add_subcommand("report", "summarize a report JSON");
  std::string rep_path;
  rep->add_option("report", rep_path, "report.json path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      lcr::cmd_simulate(sim_cfg.resolve(), sim_out, std::cout);
      return 0;
    }
    if (train->parsed()) {
      std::optional<std::filesystem::path> data;
      if (!train_data.empty()) data = train_data;
      const lcr::TrainOutcome outcome =
          lcr::cmd_train(train_cfg.resolve(), data, train_out, train_force, std::cout);
      return outcome.any_converged ? 0 : 1;
    }
    if (rec->parsed()) {
      lcr::cmd_reconstruct(rec_model, rec_data, rec_out,
                           rec_cfg.resolve().system, std::cout);
      return 0;
    }
    if (rep->parsed()) {
      lcr::cmd_report(rep_path, std::cout);
      return 0;
    }
  } catch (const lcr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const lcr::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
