#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcr/embedding.hpp"
#include "lcr/mapper_coach.hpp"
#include "lcr/rng.hpp"

using namespace lcr;

namespace {

EmbeddedDataset tiny_dataset(std::size_t n, std::uint64_t seed) {
  const Trajectory traj = simulate(LogisticSystemParams{}, n + 1, 50, seed);
  return build_dataset(traj);
}

void zero_out(Mlp& net) {
  for (auto& layer : net.layers) {
    for (double& w : layer.weights.flat()) w = 0.0;
    for (double& b : layer.biases) b = 0.0;
  }
}

}  // namespace

TEST_CASE("make_mapper_coach: reference architecture") {
  const MapperCoachNet net = make_mapper_coach(20, 2, 1);
  CHECK(net.mapper.input_dim() == 2);
  CHECK(net.mapper.output_dim() == 1);
  CHECK(net.coach.input_dim() == 2);
  CHECK(net.coach.output_dim() == 1);
  CHECK(net.mapper.layers.size() == 3);
  CHECK(net.mapper.layers[0].out_dim() == 20);
  CHECK(net.mapper.layers[0].activation == Activation::kTanh);
  CHECK(net.mapper.layers[2].activation == Activation::kLinear);
  CHECK_NOTHROW(net.validate());
  // Mapper and coach do not share initial weights.
  CHECK(flatten_parameters(net.mapper) != flatten_parameters(net.coach));
}

TEST_CASE("validate: rejects a non-scalar bottleneck") {
  MapperCoachNet net = make_mapper_coach(4, 1, 2);
  net.mapper = init_network({2, 4, 2}, {Activation::kTanh, Activation::kLinear}, 3);
  CHECK_THROWS_AS(net.validate(), ShapeError);
}

TEST_CASE("predict: zero-weight network outputs zero") {
  MapperCoachNet net = make_mapper_coach(5, 1, 4);
  zero_out(net.mapper);
  zero_out(net.coach);
  CHECK(predict(net, std::vector<double>{0.3, 0.7}, 0.5) == 0.0);
  CHECK(predict(net, std::vector<double>{0.9, 0.1}, 0.2) == 0.0);
}

TEST_CASE("predict: coach with a dead bottleneck column ignores y") {
  MapperCoachNet net = make_mapper_coach(6, 2, 9);
  for (std::size_t o = 0; o < net.coach.layers[0].out_dim(); ++o) {
    net.coach.layers[0].weights(o, 0) = 0.0;
  }
  const double a = predict(net, std::vector<double>{0.12, 0.95}, 0.4);
  const double b = predict(net, std::vector<double>{0.78, 0.03}, 0.4);
  CHECK(a == b);
}

TEST_CASE("reconstruct: zero-weight mapper emits a constant zero series") {
  MapperCoachNet net = make_mapper_coach(5, 2, 10);
  zero_out(net.mapper);
  Matrix rows(7, 2);
  Rng rng(2);
  for (double& v : rows.flat()) v = rng.uniform01();
  for (const double v : reconstruct(net, rows)) CHECK(v == 0.0);
}

TEST_CASE("reconstruct: independent of every coach parameter") {
  const MapperCoachNet net = make_mapper_coach(8, 2, 11);
  Matrix rows(20, 2);
  Rng rng(3);
  for (double& v : rows.flat()) v = rng.uniform01();
  const std::vector<double> base = reconstruct(net, rows);

  MapperCoachNet perturbed = net;
  for (auto& layer : perturbed.coach.layers) {
    for (double& w : layer.weights.flat()) w += rng.uniform(-1.0, 1.0);
    for (double& b : layer.biases) b += rng.uniform(-1.0, 1.0);
  }
  CHECK(reconstruct(perturbed, rows) == base);
}

TEST_CASE("composed gradient check passes across the bottleneck") {
  // Unit init spread: central differences at h=1e-6 lose their meaning on
  // saturated networks, where the fd truncation term (third derivatives grow
  // like the cube of the weight scale) dwarfs the near-zero gradients.
  Rng rng(14);
  for (int trial = 0; trial < 3; ++trial) {
    const MapperCoachNet net = make_mapper_coach(20, 2, rng.below(1u << 20), 1.0);
    const std::size_t batch = 1 + rng.below(3);
    Matrix y(batch, 2);
    std::vector<double> x_prev(batch);
    std::vector<double> target(batch);
    for (double& v : y.flat()) v = rng.uniform01();
    for (double& v : x_prev) v = rng.uniform01();
    for (double& v : target) v = rng.uniform01();
    CHECK(gradient_check(net, y, x_prev, target, 1e-6) < 1e-5);
  }
}

TEST_CASE("train: config validation") {
  MapperCoachNet net = make_mapper_coach(4, 1, 20);
  const EmbeddedDataset ds = tiny_dataset(50, 21);
  TrainingConfig cfg;
  cfg.hidden_width = 4;
  cfg.hidden_depth = 1;
  cfg.batch_size = 10;

  TrainingConfig bad = cfg;
  bad.epochs = 0;
  CHECK_THROWS_AS(train(net, ds, bad), ConfigError);
  bad = cfg;
  bad.batch_size = ds.size() + 1;
  CHECK_THROWS_AS(train(net, ds, bad), ConfigError);
  bad = cfg;
  bad.batch_size = 0;
  CHECK_THROWS_AS(train(net, ds, bad), ConfigError);
  bad = cfg;
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(train(net, ds, bad), ConfigError);
}

TEST_CASE("train: one epoch yields a one-entry curve") {
  MapperCoachNet net = make_mapper_coach(4, 1, 22);
  const EmbeddedDataset ds = tiny_dataset(40, 23);
  TrainingConfig cfg;
  cfg.epochs = 1;
  cfg.batch_size = 8;
  cfg.seed = 5;
  const std::vector<double> curve = train(net, ds, cfg);
  REQUIRE(curve.size() == 1);
  CHECK(std::isfinite(curve[0]));
}

TEST_CASE("train: fits a constant target") {
  MapperCoachNet net = make_mapper_coach(5, 1, 24, 1.0);
  EmbeddedDataset ds = tiny_dataset(60, 25);
  const double c = 0.37;
  for (double& v : ds.x_target) v = c;
  TrainingConfig cfg;
  cfg.epochs = 400;
  cfg.batch_size = 30;
  cfg.learning_rate = 5e-3;
  cfg.seed = 6;
  const std::vector<double> curve = train(net, ds, cfg);
  CHECK(curve.back() < 1e-4);
  CHECK(curve.back() < curve.front());
  const std::vector<double> pred = predict(net, ds.y_embed, ds.x_prev);
  for (const double p : pred) CHECK(p == doctest::Approx(c).epsilon(0.05));
}

TEST_CASE("train: loss decreases on real data") {
  MapperCoachNet net = make_mapper_coach(8, 2, 26, 1.0);
  const EmbeddedDataset ds = tiny_dataset(400, 27);
  TrainingConfig cfg;
  cfg.epochs = 120;
  cfg.batch_size = 100;
  cfg.seed = 7;
  const std::vector<double> curve = train(net, ds, cfg);
  REQUIRE(curve.size() == 120);
  CHECK(curve.back() < 0.5 * curve.front());
}

TEST_CASE("train: bitwise reproducible for a fixed seed") {
  const EmbeddedDataset ds = tiny_dataset(120, 29);
  TrainingConfig cfg;
  cfg.epochs = 25;
  cfg.batch_size = 40;
  cfg.seed = 99;

  MapperCoachNet a = make_mapper_coach(6, 2, 30);
  MapperCoachNet b = make_mapper_coach(6, 2, 30);
  const std::vector<double> curve_a = train(a, ds, cfg);
  const std::vector<double> curve_b = train(b, ds, cfg);
  CHECK(curve_a == curve_b);
  CHECK(flatten_parameters(a) == flatten_parameters(b));

  MapperCoachNet c = make_mapper_coach(6, 2, 30);
  TrainingConfig other = cfg;
  other.seed = 100;
  const std::vector<double> curve_c = train(c, ds, other);
  CHECK(curve_a != curve_c);
}

TEST_CASE("flatten/unflatten across the pair round-trips") {
  const MapperCoachNet net = make_mapper_coach(7, 2, 31);
  const std::vector<double> flat = flatten_parameters(net);
  CHECK(flat.size() == parameter_count(net));
  MapperCoachNet other = make_mapper_coach(7, 2, 32);
  unflatten_parameters(flat, other);
  CHECK(flatten_parameters(other) == flat);
}
