#include "lcr/commands.hpp"

#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "lcr/csv.hpp"
#include "lcr/model_io.hpp"
#include "lcr/rng.hpp"

namespace lcr {

namespace fs = std::filesystem;

namespace {

// Seed stream for the data simulation, distinct from every restart index.
constexpr std::uint64_t kSimulationStream = 0x100000000ull;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

void create_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory: " + dir.string());
}

std::size_t effective_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

EmbeddedDataset load_any_dataset(const fs::path& data_path,
                                 const LogisticSystemParams& params) {
  if (is_dataset_csv(data_path)) {
    return read_dataset_csv(data_path, params);
  }
  return build_dataset(read_trajectory_csv(data_path, params));
}

void print_report_summary(const EvaluationReport& report, std::ostream& out) {
  out << "runs: " << report.records.size() << "  (failed " << report.n_failed
      << ", local_minimum " << report.n_local_minimum << ", converged "
      << report.n_converged << ")\n";
  if (!report.records.empty()) {
    const RunRecord& best = report.records[report.best_run];
    out << "best run: #" << best.restart_index << " (seed " << best.seed
        << ")  r2_prediction=" << best.r2_prediction
        << "  r2_reconstruction=" << best.r2_reconstruction
        << "  slope_sign=" << best.reconstruction_slope_sign << '\n';
    out << "best final train loss: " << best.final_train_loss << '\n';
  }
  out << "pred-vs-rec correlation (non-failed runs): ";
  if (report.has_correlation) {
    out << report.pred_rec_correlation << '\n';
  } else {
    out << "n/a (<2 estimable runs)\n";
  }
  out << "oracle ceiling: ";
  if (report.has_oracle_ceiling) {
    out << report.oracle_ceiling << '\n';
  } else {
    out << "n/a\n";
  }
}

}  // namespace

fs::path resolve_output_dir(const fs::path& requested, bool force) {
  if (!fs::exists(requested) || force) {
    create_dirs(requested);
    return requested;
  }
  const std::string stamp = utc_timestamp();
  fs::path candidate = requested / ("run-" + stamp);
  for (int suffix = 2; fs::exists(candidate); ++suffix) {
    candidate = requested / ("run-" + stamp + "-" + std::to_string(suffix));
  }
  create_dirs(candidate);
  return candidate;
}

void cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_csv,
                  std::ostream& out) {
  cfg.system.validate();
  if (cfg.n_points < 2) throw ConfigError("n_points must be at least 2");
  const std::uint64_t sim_seed = mix_seed(cfg.master_seed, kSimulationStream);
  const Trajectory traj = simulate(cfg.system, cfg.n_points, cfg.burn_in, sim_seed);
  write_trajectory_csv(out_csv, traj);
  out << "wrote " << traj.size() << " points to " << out_csv.string()
      << " (master_seed " << cfg.master_seed << ", simulation seed " << sim_seed
      << ")\n";
}

TrainOutcome cmd_train(const ExperimentConfig& cfg,
                       const std::optional<fs::path>& data,
                       const fs::path& out_dir, bool force, std::ostream& out) {
  cfg.validate();

  EmbeddedDataset full;
  if (data.has_value()) {
    full = load_any_dataset(*data, cfg.system);
  } else {
    const std::uint64_t sim_seed = mix_seed(cfg.master_seed, kSimulationStream);
    full = build_dataset(simulate(cfg.system, cfg.n_points, cfg.burn_in, sim_seed));
  }
  if (cfg.n_train >= full.size()) {
    throw ConfigError("n_train must be smaller than the dataset size");
  }
  const auto [train_set, test_set] = split(full, cfg.n_train);

  const fs::path dir = resolve_output_dir(out_dir, force);
  save_config(dir / "config.json", cfg);

  std::vector<MapperCoachNet> trained;
  const EvaluationReport report = run_restarts(
      train_set, test_set, cfg.training_config(), cfg.n_restarts,
      cfg.master_seed, effective_jobs(cfg.jobs), ClusterThresholds{}, &trained);

  save_report(dir / "report.json", report);
  write_learning_curves_csv(dir / "learning_curves.csv", report.records);
  write_run_metrics_csv(dir / "run_metrics.csv", report.records);

  const MapperCoachNet& best = trained[report.best_run];
  save_model(dir / "best_model.json", best);
  const std::vector<double> pred = predict(best, test_set.y_embed, test_set.x_prev);
  const std::vector<double> z_hat = reconstruct(best, test_set.y_embed);
  write_pairs_csv(dir / "prediction_pairs.csv", "x_true", "x_pred",
                  test_set.x_target, pred);
  write_pairs_csv(dir / "reconstruction_pairs.csv", "z_true", "z_hat",
                  test_set.z_truth, z_hat);

  out << "output directory: " << dir.string() << '\n';
  print_report_summary(report, out);

  TrainOutcome outcome;
  outcome.out_dir = dir;
  outcome.report = report;
  outcome.any_converged = report.n_converged > 0;
  return outcome;
}

ReconstructOutcome cmd_reconstruct(const fs::path& model_path,
                                   const fs::path& data_path,
                                   const fs::path& out_csv,
                                   const LogisticSystemParams& params,
                                   std::ostream& out) {
  const MapperCoachNet net = load_model(model_path);
  const EmbeddedDataset ds = load_any_dataset(data_path, params);
  const std::vector<double> z_hat = reconstruct(net, ds.y_embed);

  bool finite = true;
  for (const double v : z_hat) finite = finite && std::isfinite(v);

  ReconstructOutcome res;
  res.n_samples = ds.size();
  const bool scorable = finite && ds.size() >= 2;
  res.r2 = scorable ? r_squared(z_hat, ds.z_truth) : 0.0;
  res.slope_sign = scorable ? slope_sign(ds.z_truth, z_hat) : 0;

  write_indexed_pairs_csv(out_csv, "z_truth", "z_hat", ds.z_truth, z_hat);

  fs::path companion = out_csv;
  companion.replace_extension(".json");
  if (companion == out_csv) companion += ".meta.json";
  nlohmann::json meta;
  meta["r_squared"] = res.r2;
  meta["slope_sign"] = res.slope_sign;
  meta["n_samples"] = res.n_samples;
  save_json(companion, meta);

  out << "wrote " << res.n_samples << " reconstructed points to "
      << out_csv.string() << "  r_squared=" << res.r2
      << "  slope_sign=" << res.slope_sign << '\n';
  return res;
}

void cmd_report(const fs::path& report_path, std::ostream& out) {
  const EvaluationReport report = load_report(report_path);
  if (report.records.empty()) {
    throw InsufficientDataError("report has no run records");
  }
  print_report_summary(report, out);
}

}  // namespace lcr
