#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcr/experiment.hpp"
#include "lcr/model_io.hpp"
#include "lcr/rng.hpp"

using namespace lcr;

namespace {

std::vector<double> random_series(Rng& rng, std::size_t n, double lo = 0.0,
                                  double hi = 1.0) {
  std::vector<double> s(n);
  for (double& v : s) v = rng.uniform(lo, hi);
  return s;
}

struct ExperimentFixture {
  EmbeddedDataset train_set;
  EmbeddedDataset test_set;
  TrainingConfig cfg;

  explicit ExperimentFixture(std::uint64_t seed = 77) {
    const Trajectory traj = simulate(LogisticSystemParams{}, 500, 100, seed);
    const EmbeddedDataset ds = build_dataset(traj);
    std::tie(train_set, test_set) = split(ds, 300);
    cfg.epochs = 20;
    cfg.batch_size = 100;
    cfg.hidden_width = 5;
    cfg.hidden_depth = 1;
  }
};

}  // namespace

TEST_CASE("r_squared: self-correlation and affine invariance") {
  Rng rng(1);
  const std::vector<double> a = random_series(rng, 50);
  CHECK(r_squared(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = -2.0 * a[i] + 3.0;
  CHECK(r_squared(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson_r(a, b) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("r_squared: orthogonal patterns score zero") {
  const std::vector<double> a{1.0, -1.0, 1.0, -1.0};
  const std::vector<double> b{1.0, 1.0, -1.0, -1.0};
  CHECK(r_squared(a, b) == 0.0);
}

TEST_CASE("r_squared: zero-variance convention") {
  const std::vector<double> constant(10, 0.4);
  Rng rng(2);
  const std::vector<double> a = random_series(rng, 10);
  CHECK(r_squared(constant, a) == 0.0);
  CHECK(r_squared(a, constant) == 0.0);
  CHECK(pearson_r(constant, constant) == 0.0);
}

TEST_CASE("r_squared: length errors") {
  const std::vector<double> a{1.0, 2.0};
  CHECK_THROWS_AS(r_squared(a, std::vector<double>{1.0}), LengthError);
  CHECK_THROWS_AS(r_squared(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  LengthError);
}

TEST_CASE("r_squared: symmetry, range and affine invariance properties") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    const std::vector<double> a = random_series(rng, n);
    const std::vector<double> b = random_series(rng, n);
    const double r2 = r_squared(a, b);
    CHECK(r2 == r_squared(b, a));
    CHECK(r2 >= 0.0);
    CHECK(r2 <= 1.0);

    double alpha = rng.uniform(-10.0, 10.0);
    if (std::fabs(alpha) < 1e-3) alpha = 1e-3;
    const double beta = rng.uniform(-10.0, 10.0);
    std::vector<double> affine(n);
    for (std::size_t i = 0; i < n; ++i) affine[i] = alpha * a[i] + beta;
    CHECK(r_squared(a, affine) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("slope_sign") {
  const std::vector<double> t{0.1, 0.2, 0.3, 0.4};
  std::vector<double> up{1.0, 2.0, 3.0, 4.0};
  std::vector<double> down{4.0, 3.0, 2.0, 1.0};
  const std::vector<double> flat(4, 2.0);
  CHECK(slope_sign(t, up) == 1);
  CHECK(slope_sign(t, down) == -1);
  CHECK(slope_sign(t, flat) == 0);
}

TEST_CASE("classify: thresholds with closed lower bounds") {
  CHECK(classify(0.99) == Cluster::kConverged);
  CHECK(classify(0.9) == Cluster::kConverged);
  CHECK(classify(0.89999) == Cluster::kLocalMinimum);
  CHECK(classify(0.1) == Cluster::kLocalMinimum);
  CHECK(classify(0.05) == Cluster::kFailed);
  const ClusterThresholds strict{0.99, 0.5};
  CHECK(classify(0.98, strict) == Cluster::kLocalMinimum);
  CHECK(classify(0.4, strict) == Cluster::kFailed);
}

TEST_CASE("pred_vs_rec_correlation") {
  std::vector<RunRecord> records(4);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].r2_prediction = 0.2 + 0.2 * double(i);
    records[i].r2_reconstruction = 0.1 + 0.1 * double(i);
    records[i].cluster = Cluster::kLocalMinimum;
  }
  CHECK(pred_vs_rec_correlation(records) == doctest::Approx(1.0).epsilon(1e-12));

  // Identical values in one coordinate: zero-variance convention.
  for (auto& r : records) r.r2_reconstruction = 0.5;
  CHECK(pred_vs_rec_correlation(records) == 0.0);

  // Failed runs are excluded; fewer than 2 estimable runs is an error.
  records[0].cluster = Cluster::kFailed;
  records[1].cluster = Cluster::kFailed;
  records[2].cluster = Cluster::kFailed;
  CHECK_THROWS_AS(pred_vs_rec_correlation(records), InsufficientDataError);
}

TEST_CASE("oracle_ceiling: exact on simulated data, destroyed by shuffling") {
  const Trajectory traj = simulate(LogisticSystemParams{}, 2000, 200, 55);
  EmbeddedDataset ds = build_dataset(traj);
  CHECK(oracle_ceiling(ds) >= 1.0 - 1e-12);

  Rng rng(4);
  rng.shuffle(ds.z_truth);
  CHECK(oracle_ceiling(ds) < 0.5);
}

TEST_CASE("oracle_ceiling: error propagation") {
  Trajectory traj = simulate(LogisticSystemParams{}, 100, 10, 56);
  EmbeddedDataset tiny = build_dataset(traj);
  const auto [head, tail] = split(tiny, tiny.size() - 1);
  CHECK_THROWS_AS(oracle_ceiling(tail), LengthError);

  LogisticSystemParams p;
  p.beta_yz = 0.0;
  const Trajectory decoupled = simulate(p, 100, 10, 57);
  CHECK_THROWS_AS(oracle_ceiling(build_dataset(decoupled)), SingularInputError);
}

TEST_CASE("run_restarts: single restart is trivially the best") {
  ExperimentFixture fx;
  const EvaluationReport report =
      run_restarts(fx.train_set, fx.test_set, fx.cfg, 1, 42);
  REQUIRE(report.records.size() == 1);
  CHECK(report.best_run == 0);
  CHECK(report.records[0].restart_index == 0);
  CHECK(report.records[0].seed == mix_seed(42, 0));
  CHECK(report.records[0].learning_curve.size() == fx.cfg.epochs);
  CHECK(report.has_oracle_ceiling);
  CHECK(report.oracle_ceiling >= 1.0 - 1e-12);
  CHECK(report.n_failed + report.n_local_minimum + report.n_converged == 1);
}

TEST_CASE("run_restarts: deterministic and parallel-equal") {
  ExperimentFixture fx;
  const EvaluationReport a = run_restarts(fx.train_set, fx.test_set, fx.cfg, 4, 9);
  const EvaluationReport b = run_restarts(fx.train_set, fx.test_set, fx.cfg, 4, 9);
  CHECK(report_to_json(a) == report_to_json(b));

  const EvaluationReport par =
      run_restarts(fx.train_set, fx.test_set, fx.cfg, 4, 9, 3);
  CHECK(report_to_json(par) == report_to_json(a));

  const EvaluationReport other =
      run_restarts(fx.train_set, fx.test_set, fx.cfg, 4, 10);
  CHECK(report_to_json(other) != report_to_json(a));
}

TEST_CASE("run_restarts: adding restarts never perturbs earlier runs") {
  ExperimentFixture fx;
  const EvaluationReport small =
      run_restarts(fx.train_set, fx.test_set, fx.cfg, 2, 31);
  const EvaluationReport large =
      run_restarts(fx.train_set, fx.test_set, fx.cfg, 3, 31);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(large.records[i].seed == small.records[i].seed);
    CHECK(large.records[i].learning_curve == small.records[i].learning_curve);
    CHECK(large.records[i].r2_prediction == small.records[i].r2_prediction);
  }
}

TEST_CASE("run_restarts: a diverging run is recorded as failed") {
  ExperimentFixture fx;
  TrainingConfig wild = fx.cfg;
  wild.learning_rate = 1e155;  // drives the loss to Inf and the update to NaN
  wild.epochs = 5;
  const EvaluationReport report =
      run_restarts(fx.train_set, fx.test_set, wild, 1, 3);
  REQUIRE(report.records.size() == 1);
  CHECK(report.records[0].cluster == Cluster::kFailed);
  CHECK(report.records[0].r2_prediction == 0.0);
  CHECK(report.records[0].r2_reconstruction == 0.0);
  CHECK(report.n_failed == 1);
}

TEST_CASE("run_restarts: invalid inputs") {
  ExperimentFixture fx;
  CHECK_THROWS_AS(run_restarts(fx.train_set, fx.test_set, fx.cfg, 0, 1),
                  ConfigError);
  TrainingConfig bad = fx.cfg;
  bad.batch_size = fx.train_set.size() + 1;
  CHECK_THROWS_AS(run_restarts(fx.train_set, fx.test_set, bad, 1, 1), ConfigError);
}
