#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "lcr/config.hpp"
#include "lcr/csv.hpp"
#include "lcr/model_io.hpp"
#include "lcr/rng.hpp"

using namespace lcr;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lcr_io_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_lines(const std::string& text, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n && pos != std::string::npos; ++i) {
    pos = text.find('\n', pos + 1);
  }
  return text.substr(0, pos);
}

}  // namespace

TEST_CASE("format_double survives the round trip") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-1e3, 1e3) * std::pow(10.0, double(rng.below(7)) - 3.0);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.2) == "0.20000000000000001");
}

TEST_CASE("trajectory CSV round-trips bitwise") {
  const Trajectory traj = simulate(LogisticSystemParams{}, 200, 20, 5);
  const fs::path p = temp_dir() / "traj.csv";
  write_trajectory_csv(p, traj);

  const std::string text = read_file(p);
  CHECK(text.substr(0, 8) == "t,x,y,z\n");

  const Trajectory back = read_trajectory_csv(p, traj.params);
  CHECK(back.x == traj.x);
  CHECK(back.y == traj.y);
  CHECK(back.z == traj.z);
}

TEST_CASE("dataset CSV round-trips bitwise") {
  const Trajectory traj = simulate(LogisticSystemParams{}, 150, 20, 6);
  const EmbeddedDataset ds = build_dataset(traj);
  const fs::path p = temp_dir() / "dataset.csv";
  write_dataset_csv(p, ds);

  CHECK(is_dataset_csv(p));
  const EmbeddedDataset back = read_dataset_csv(p, ds.params);
  CHECK(back.y_embed == ds.y_embed);
  CHECK(back.x_prev == ds.x_prev);
  CHECK(back.x_target == ds.x_target);
  CHECK(back.z_truth == ds.z_truth);
}

TEST_CASE("CSV format errors") {
  const fs::path p = temp_dir() / "bad.csv";

  std::ofstream(p) << "a,b,c\n1,2,3\n";
  CHECK_THROWS_AS(read_trajectory_csv(p, LogisticSystemParams{}), FormatError);
  CHECK_THROWS_AS(is_dataset_csv(p), FormatError);

  std::ofstream(p) << "t,x,y,z\n0,0.1,0.2\n";
  CHECK_THROWS_AS(read_trajectory_csv(p, LogisticSystemParams{}), FormatError);

  std::ofstream(p) << "t,x,y,z\n0,0.1,oops,0.3\n1,0.1,0.2,0.3\n";
  CHECK_THROWS_AS(read_trajectory_csv(p, LogisticSystemParams{}), FormatError);

  std::ofstream(p) << "t,x,y,z\n0,0.1,0.2,1.5\n1,0.1,0.2,0.3\n";
  CHECK_THROWS_AS(read_trajectory_csv(p, LogisticSystemParams{}), FormatError);

  std::ofstream(p) << "t,x,y,z\n0,0.1,0.2,0.3\n";
  CHECK_THROWS_AS(read_trajectory_csv(p, LogisticSystemParams{}), FormatError);
}

TEST_CASE("CSV io errors") {
  CHECK_THROWS_AS(read_trajectory_csv("/nonexistent/no.csv", LogisticSystemParams{}),
                  IoError);
  const Trajectory traj = simulate(LogisticSystemParams{}, 10, 0, 7);
  CHECK_THROWS_AS(write_trajectory_csv("/nonexistent/dir/out.csv", traj), IoError);
}

TEST_CASE("model save/load: byte-identical resave, bit-identical predictions") {
  const MapperCoachNet net = make_mapper_coach(9, 2, 88);
  const fs::path p1 = temp_dir() / "model1.json";
  const fs::path p2 = temp_dir() / "model2.json";
  save_model(p1, net);
  const MapperCoachNet loaded = load_model(p1);
  save_model(p2, loaded);
  CHECK(read_file(p1) == read_file(p2));

  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> y{rng.uniform01(), rng.uniform01()};
    const double xp = rng.uniform01();
    CHECK(predict(net, y, xp) == predict(loaded, y, xp));
  }
}

TEST_CASE("model load: rejects malformed files") {
  const fs::path p = temp_dir() / "broken.json";

  std::ofstream(p) << "{ not json";
  CHECK_THROWS_AS(load_model(p), FormatError);

  const MapperCoachNet net = make_mapper_coach(4, 1, 21);
  nlohmann::json good;
  good["format_version"] = kModelFormatVersion;
  good["mapper"] = mlp_to_json(net.mapper);
  good["coach"] = mlp_to_json(net.coach);

  nlohmann::json bad = good;
  bad["format_version"] = 999;
  std::ofstream(p) << bad.dump();
  CHECK_THROWS_AS(load_model(p), FormatError);

  bad = good;
  bad.erase("coach");
  std::ofstream(p) << bad.dump();
  CHECK_THROWS_AS(load_model(p), FormatError);

  // A 2-unit bottleneck violates the architecture invariant.
  bad = good;
  bad["mapper"] =
      mlp_to_json(init_network({2, 4, 2}, {Activation::kTanh, Activation::kLinear}, 5));
  std::ofstream(p) << bad.dump();
  CHECK_THROWS_AS(load_model(p), ShapeError);

  // Weight block inconsistent with layer_dims.
  bad = good;
  bad["mapper"]["weights"][0] = std::vector<double>{1.0, 2.0, 3.0};
  std::ofstream(p) << bad.dump();
  CHECK_THROWS_AS(load_model(p), ShapeError);
}

TEST_CASE("report JSON round-trips") {
  EvaluationReport report;
  report.records.resize(2);
  report.records[0].restart_index = 0;
  report.records[0].seed = 111;
  report.records[0].learning_curve = {0.5, 0.25, 0.125};
  report.records[0].final_train_loss = 0.125;
  report.records[0].r2_prediction = 0.97;
  report.records[0].r2_reconstruction = 0.91;
  report.records[0].reconstruction_slope_sign = -1;
  report.records[0].cluster = Cluster::kConverged;
  report.records[1].restart_index = 1;
  report.records[1].seed = 222;
  report.records[1].learning_curve = {0.5, 0.5, 0.5};
  report.records[1].final_train_loss = 0.5;
  report.records[1].r2_prediction = 0.3;
  report.records[1].r2_reconstruction = 0.2;
  report.records[1].reconstruction_slope_sign = 1;
  report.records[1].cluster = Cluster::kLocalMinimum;
  report.best_run = 0;
  report.n_local_minimum = 1;
  report.n_converged = 1;
  report.has_correlation = false;
  report.has_oracle_ceiling = true;
  report.oracle_ceiling = 0.999999;

  const fs::path p = temp_dir() / "report.json";
  save_report(p, report);
  const EvaluationReport back = load_report(p);
  CHECK(report_to_json(back) == report_to_json(report));
  CHECK(back.records[0].learning_curve == report.records[0].learning_curve);
  CHECK(back.has_correlation == false);
  CHECK(back.oracle_ceiling == report.oracle_ceiling);
}

TEST_CASE("config JSON: defaults round-trip and overlays apply") {
  const ExperimentConfig defaults;
  const fs::path p = temp_dir() / "config.json";
  save_config(p, defaults);
  CHECK(load_config(p) == defaults);

  nlohmann::json overlay;
  overlay["epochs"] = 12;
  overlay["beta_yz"] = 0.15;
  const ExperimentConfig patched = config_from_json(overlay, defaults);
  CHECK(patched.epochs == 12);
  CHECK(patched.system.beta_yz == 0.15);
  CHECK(patched.n_points == defaults.n_points);

  nlohmann::json typo;
  typo["epocs"] = 12;
  CHECK_THROWS_AS(config_from_json(typo, defaults), ConfigError);
  nlohmann::json badval;
  badval["epochs"] = "many";
  CHECK_THROWS_AS(config_from_json(badval, defaults), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_train = 19999;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.batch_size = 10001;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.system.r = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("learning-curve and metrics CSV exports") {
  std::vector<RunRecord> records(2);
  records[0].restart_index = 0;
  records[0].seed = 5;
  records[0].learning_curve = {0.4, 0.2};
  records[0].final_train_loss = 0.2;
  records[0].r2_prediction = 0.8;
  records[0].cluster = Cluster::kLocalMinimum;
  records[1].restart_index = 1;
  records[1].seed = 6;
  records[1].learning_curve = {0.4, 0.3};
  records[1].final_train_loss = 0.3;
  records[1].cluster = Cluster::kFailed;

  const fs::path curves = temp_dir() / "curves.csv";
  write_learning_curves_csv(curves, records);
  const std::string text = read_file(curves);
  CHECK(first_lines(text, 2) ==
        "restart,epoch,loss\n0,0,0.40000000000000002");

  const fs::path metrics = temp_dir() / "metrics.csv";
  write_run_metrics_csv(metrics, records);
  const std::string mtext = read_file(metrics);
  CHECK(mtext.find("local_minimum") != std::string::npos);
  CHECK(mtext.find("failed") != std::string::npos);
}
