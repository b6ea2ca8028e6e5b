#include "lcr/mapper_coach.hpp"

#include <cmath>
#include <cstring>
#include <numeric>

#include "lcr/rng.hpp"

namespace lcr {

void MapperCoachNet::validate() const {
  if (mapper.layers.empty() || coach.layers.empty()) {
    throw ShapeError("both subnetworks need at least one layer");
  }
  if (mapper.input_dim() != 2) {
    throw ShapeError("mapper input must be the 2-dimensional embedded y state");
  }
  if (mapper.output_dim() != 1) {
    throw ShapeError("bottleneck must be scalar");
  }
  if (coach.input_dim() != 2) {
    throw ShapeError("coach input must be [bottleneck, x_prev]");
  }
  if (coach.output_dim() != 1) {
    throw ShapeError("coach output must be the scalar x_t prediction");
  }
  for (const Mlp* net : {&mapper, &coach}) {
    for (std::size_t l = 0; l + 1 < net->layers.size(); ++l) {
      if (net->layers[l].out_dim() != net->layers[l + 1].in_dim()) {
        throw ShapeError("consecutive layer dimensions do not match");
      }
    }
  }
}

MapperCoachNet make_mapper_coach(std::size_t hidden_width,
                                 std::size_t hidden_depth, std::uint64_t seed,
                                 double init_gain) {
  if (hidden_width == 0 || hidden_depth == 0) {
    throw ConfigError("hidden width and depth must be positive");
  }
  if (!(init_gain > 0.0)) throw ConfigError("init gain must be positive");
  std::vector<std::size_t> dims;
  dims.push_back(2);
  for (std::size_t i = 0; i < hidden_depth; ++i) dims.push_back(hidden_width);
  dims.push_back(1);
  std::vector<Activation> acts(hidden_depth, Activation::kTanh);
  acts.push_back(Activation::kLinear);

  MapperCoachNet net;
  net.mapper = init_network(dims, acts, mix_seed(seed, 1));
  net.coach = init_network(dims, acts, mix_seed(seed, 2));
  for (Mlp* sub : {&net.mapper, &net.coach}) {
    for (LayerParams& layer : sub->layers) {
      for (double& w : layer.weights.flat()) w *= init_gain;
    }
  }
  return net;
}

void TrainingConfig::validate(std::size_t train_size) const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (train_size == 0) throw ConfigError("training set is empty");
  if (batch_size > train_size) {
    throw ConfigError("batch_size exceeds the training-set size");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw ConfigError("ADAM betas must lie in [0, 1)");
  }
  if (!(adam_epsilon > 0.0)) throw ConfigError("ADAM epsilon must be positive");
  if (hidden_width == 0 || hidden_depth == 0) {
    throw ConfigError("hidden width and depth must be positive");
  }
}

namespace {

Matrix coach_input(std::span<const double> bottleneck,
                   std::span<const double> x_prev) {
  Matrix in(bottleneck.size(), 2);
  for (std::size_t b = 0; b < bottleneck.size(); ++b) {
    in(b, 0) = bottleneck[b];
    in(b, 1) = x_prev[b];
  }
  return in;
}

}  // namespace

std::vector<double> predict(const MapperCoachNet& net, const Matrix& y_rows,
                            std::span<const double> x_prev) {
  net.validate();
  if (y_rows.rows() != x_prev.size()) {
    throw ShapeError("y rows and x_prev lengths differ");
  }
  const Matrix bottleneck = forward(net.mapper, y_rows);
  const Matrix pred = forward(net.coach, coach_input(bottleneck.flat(), x_prev));
  return {pred.data(), pred.data() + pred.size()};
}

double predict(const MapperCoachNet& net, std::span<const double> y_row,
               double x_prev) {
  if (y_row.size() != 2) throw ShapeError("y row must have width 2");
  Matrix rows(1, 2);
  rows(0, 0) = y_row[0];
  rows(0, 1) = y_row[1];
  return predict(net, rows, std::span<const double>(&x_prev, 1))[0];
}

std::vector<double> reconstruct(const MapperCoachNet& net, const Matrix& y_rows) {
  if (y_rows.cols() != 2) throw ShapeError("y rows must have width 2");
  const Matrix bottleneck = forward(net.mapper, y_rows);
  return {bottleneck.data(), bottleneck.data() + bottleneck.size()};
}

std::size_t parameter_count(const MapperCoachNet& net) {
  return net.mapper.parameter_count() + net.coach.parameter_count();
}

std::vector<double> flatten_parameters(const MapperCoachNet& net) {
  std::vector<double> flat(parameter_count(net));
  const std::size_t n_mapper = net.mapper.parameter_count();
  flatten_parameters_into(net.mapper, std::span(flat).first(n_mapper));
  flatten_parameters_into(net.coach, std::span(flat).subspan(n_mapper));
  return flat;
}

void unflatten_parameters(std::span<const double> flat, MapperCoachNet& net) {
  if (flat.size() != parameter_count(net)) {
    throw ShapeError("flat parameter vector does not match the network pair");
  }
  const std::size_t n_mapper = net.mapper.parameter_count();
  unflatten_parameters(flat.first(n_mapper), net.mapper);
  unflatten_parameters(flat.subspan(n_mapper), net.coach);
}

std::vector<double> train(MapperCoachNet& net, const EmbeddedDataset& train_set,
                          const TrainingConfig& cfg) {
  net.validate();
  cfg.validate(train_set.size());

  const std::size_t m = train_set.size();
  const std::size_t n_mapper = net.mapper.parameter_count();
  const std::size_t n_params = parameter_count(net);

  std::vector<double> params = flatten_parameters(net);
  std::vector<double> grads(n_params);
  AdamState adam = make_adam_state(n_params, cfg.learning_rate, cfg.adam_beta1,
                                   cfg.adam_beta2, cfg.adam_epsilon);

  Rng rng(cfg.seed);
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  std::vector<double> curve;
  curve.reserve(cfg.epochs);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(perm);
    double epoch_sq_sum = 0.0;
    for (std::size_t start = 0; start < m; start += cfg.batch_size) {
      const std::size_t batch = std::min(cfg.batch_size, m - start);

      Matrix y_batch(batch, 2);
      std::vector<double> x_prev(batch);
      std::vector<double> target(batch);
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t k = perm[start + b];
        y_batch(b, 0) = train_set.y_embed(k, 0);
        y_batch(b, 1) = train_set.y_embed(k, 1);
        x_prev[b] = train_set.x_prev[k];
        target[b] = train_set.x_target[k];
      }

      ForwardCache mapper_cache;
      const Matrix bottleneck = forward(net.mapper, y_batch, &mapper_cache);
      ForwardCache coach_cache;
      const Matrix pred =
          forward(net.coach, coach_input(bottleneck.flat(), x_prev), &coach_cache);

      // Batch loss and its gradient at the coach output.
      Matrix out_grad(batch, 1);
      const double inv_batch = 1.0 / static_cast<double>(batch);
      for (std::size_t b = 0; b < batch; ++b) {
        const double diff = pred(b, 0) - target[b];
        epoch_sq_sum += diff * diff;
        out_grad(b, 0) = 2.0 * diff * inv_batch;
      }

      const Gradients coach_grads = backward(net.coach, coach_cache, out_grad);
      // Chain into the mapper through the bottleneck column.
      Matrix bottleneck_grad(batch, 1);
      for (std::size_t b = 0; b < batch; ++b) {
        bottleneck_grad(b, 0) = coach_grads.input(b, 0);
      }
      const Gradients mapper_grads =
          backward(net.mapper, mapper_cache, bottleneck_grad);

      flatten_gradients_into(mapper_grads, std::span(grads).first(n_mapper));
      flatten_gradients_into(coach_grads, std::span(grads).subspan(n_mapper));
      adam_step(params, grads, adam);
      unflatten_parameters(params, net);
    }
    curve.push_back(epoch_sq_sum / static_cast<double>(m));
  }
  return curve;
}

double gradient_check(const MapperCoachNet& net, const Matrix& y_rows,
                      std::span<const double> x_prev,
                      std::span<const double> x_target, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  net.validate();
  if (y_rows.rows() != x_prev.size() || x_prev.size() != x_target.size()) {
    throw ShapeError("mismatched sample counts");
  }
  const std::size_t batch = y_rows.rows();
  const std::size_t n_mapper = net.mapper.parameter_count();
  const std::size_t n_params = parameter_count(net);

  // Analytic gradient via the same chained backward as train().
  ForwardCache mapper_cache;
  const Matrix bottleneck = forward(net.mapper, y_rows, &mapper_cache);
  ForwardCache coach_cache;
  const Matrix pred =
      forward(net.coach, coach_input(bottleneck.flat(), x_prev), &coach_cache);
  Matrix out_grad(batch, 1);
  const double inv_batch = 1.0 / static_cast<double>(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    out_grad(b, 0) = 2.0 * (pred(b, 0) - x_target[b]) * inv_batch;
  }
  const Gradients coach_grads = backward(net.coach, coach_cache, out_grad);
  Matrix bottleneck_grad(batch, 1);
  for (std::size_t b = 0; b < batch; ++b) {
    bottleneck_grad(b, 0) = coach_grads.input(b, 0);
  }
  const Gradients mapper_grads = backward(net.mapper, mapper_cache, bottleneck_grad);

  std::vector<double> analytic(n_params);
  flatten_gradients_into(mapper_grads, std::span(analytic).first(n_mapper));
  flatten_gradients_into(coach_grads, std::span(analytic).subspan(n_mapper));

  // Central differences of the composed loss.
  MapperCoachNet probe = net;
  std::vector<double> theta = flatten_parameters(net);
  const auto loss_at = [&](void) -> double {
    const std::vector<double> p = predict(probe, y_rows, x_prev);
    return mse_loss(p, x_target);
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < n_params; ++k) {
    const double orig = theta[k];
    theta[k] = orig + h;
    unflatten_parameters(theta, probe);
    const double lp = loss_at();
    theta[k] = orig - h;
    unflatten_parameters(theta, probe);
    const double lm = loss_at();
    theta[k] = orig;
    const double fd = (lp - lm) / (2.0 * h);
    const double denom = std::max({std::fabs(analytic[k]), std::fabs(fd), 1e-4});
    worst = std::max(worst, std::fabs(analytic[k] - fd) / denom);
  }
  return worst;
}

}  // namespace lcr
