#include "lcr/neuralnet.hpp"

#include <cmath>
#include <cstring>

#include "lcr/rng.hpp"

namespace lcr {

const char* to_string(Activation a) {
  switch (a) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kLinear:
      return "linear";
  }
  return "unknown";
}

Activation activation_from_string(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "linear") return Activation::kLinear;
  throw FormatError("unknown activation: " + name);
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) {
    n += layer.weights.size() + layer.biases.size();
  }
  return n;
}

Mlp init_network(const std::vector<std::size_t>& layer_dims,
                 const std::vector<Activation>& activations,
                 std::uint64_t seed) {
  if (layer_dims.size() < 2) {
    throw ShapeError("need at least an input and an output dimension");
  }
  if (activations.size() != layer_dims.size() - 1) {
    throw ShapeError("need exactly one activation per layer");
  }
  Rng rng(seed);
  Mlp net;
  net.layers.reserve(activations.size());
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const std::size_t in = layer_dims[l];
    const std::size_t out = layer_dims[l + 1];
    if (in == 0 || out == 0) throw ShapeError("zero-width layer");
    LayerParams layer;
    layer.weights = Matrix(out, in);
    layer.biases.assign(out, 0.0);
    layer.activation = activations[l];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (double& w : layer.weights.flat()) {
      w = rng.uniform(-limit, limit);
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

namespace {

void apply_activation(Matrix& values, Activation act) {
  if (act == Activation::kTanh) {
    detail::tanh_inplace(values.data(), values.size());
  }
  // linear: identity
}

/// out = input * weights^T + biases, one sample per row.
Matrix affine(const Matrix& input, const LayerParams& layer) {
  const std::size_t batch = input.rows();
  const std::size_t in = layer.in_dim();
  const std::size_t out = layer.out_dim();

  // Transposed weight copy so the inner loops run over contiguous memory.
  Matrix wt(in, out);
  for (std::size_t o = 0; o < out; ++o) {
    for (std::size_t i = 0; i < in; ++i) {
      wt(i, o) = layer.weights(o, i);
    }
  }

  Matrix z(batch, out);
  for (std::size_t b = 0; b < batch; ++b) {
    double* zr = z.row(b);
    std::memcpy(zr, layer.biases.data(), out * sizeof(double));
    const double* xr = input.row(b);
    for (std::size_t i = 0; i < in; ++i) {
      const double xv = xr[i];
      const double* wr = wt.row(i);
      for (std::size_t o = 0; o < out; ++o) {
        zr[o] += xv * wr[o];
      }
    }
  }
  return z;
}

}  // namespace

Matrix forward(const Mlp& net, const Matrix& input, ForwardCache* cache) {
  if (net.layers.empty()) throw ShapeError("network has no layers");
  if (input.cols() != net.input_dim()) {
    throw ShapeError("input width does not match the first layer");
  }
  if (cache == nullptr) {
    Matrix cur = input;
    for (const auto& layer : net.layers) {
      cur = affine(cur, layer);
      apply_activation(cur, layer.activation);
    }
    return cur;
  }
  cache->input = input;
  cache->activations.resize(net.layers.size());
  const Matrix* cur = &input;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    cache->activations[l] = affine(*cur, net.layers[l]);
    apply_activation(cache->activations[l], net.layers[l].activation);
    cur = &cache->activations[l];
  }
  return cache->activations.back();
}

std::vector<double> forward(const Mlp& net, std::span<const double> input) {
  Matrix in(1, input.size());
  std::memcpy(in.data(), input.data(), input.size() * sizeof(double));
  const Matrix out = forward(net, in);
  return {out.data(), out.data() + out.size()};
}

double mse_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size()) {
    throw ShapeError("prediction and target lengths differ");
  }
  if (pred.empty()) throw ShapeError("mse_loss of empty vectors");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

Gradients backward(const Mlp& net, const ForwardCache& cache,
                   const Matrix& output_grad) {
  const std::size_t n_layers = net.layers.size();
  if (cache.activations.size() != n_layers) {
    throw ShapeError("cache does not match the network");
  }
  const Matrix& last = cache.activations.back();
  if (output_grad.rows() != last.rows() || output_grad.cols() != last.cols()) {
    throw ShapeError("output gradient shape does not match the forward output");
  }

  Gradients g;
  g.weights.resize(n_layers);
  g.biases.resize(n_layers);

  Matrix delta = output_grad;  // dLoss/d(activation of current layer)
  for (std::size_t l = n_layers; l-- > 0;) {
    const LayerParams& layer = net.layers[l];
    const Matrix& act = cache.activations[l];
    const std::size_t batch = delta.rows();
    const std::size_t out = layer.out_dim();
    const std::size_t in = layer.in_dim();

    // Through the activation: tanh'(z) = 1 - act^2, linear' = 1.
    if (layer.activation == Activation::kTanh) {
      double* d = delta.data();
      const double* a = act.data();
      for (std::size_t k = 0; k < delta.size(); ++k) {
        d[k] *= 1.0 - a[k] * a[k];
      }
    }

    const Matrix& input = (l == 0) ? cache.input : cache.activations[l - 1];
    g.weights[l] = Matrix(out, in);
    g.biases[l].assign(out, 0.0);
    Matrix dx(batch, in);
    for (std::size_t b = 0; b < batch; ++b) {
      const double* dr = delta.row(b);
      const double* xr = input.row(b);
      double* dxr = dx.row(b);
      for (std::size_t o = 0; o < out; ++o) {
        const double dv = dr[o];
        g.biases[l][o] += dv;
        double* gw = g.weights[l].row(o);
        const double* wr = layer.weights.row(o);
        for (std::size_t i = 0; i < in; ++i) {
          gw[i] += dv * xr[i];
          dxr[i] += dv * wr[i];
        }
      }
    }
    delta = std::move(dx);
  }
  g.input = std::move(delta);
  return g;
}

std::vector<double> flatten_parameters(const Mlp& net) {
  std::vector<double> flat(net.parameter_count());
  flatten_parameters_into(net, flat);
  return flat;
}

void flatten_parameters_into(const Mlp& net, std::span<double> out) {
  std::size_t k = 0;
  for (const auto& layer : net.layers) {
    for (const double w : layer.weights.flat()) out[k++] = w;
    for (const double b : layer.biases) out[k++] = b;
  }
  if (k != out.size()) throw ShapeError("flat parameter buffer size mismatch");
}

void unflatten_parameters(std::span<const double> flat, Mlp& net) {
  if (flat.size() != net.parameter_count()) {
    throw ShapeError("flat parameter vector does not match the network");
  }
  std::size_t k = 0;
  for (auto& layer : net.layers) {
    for (double& w : layer.weights.flat()) w = flat[k++];
    for (double& b : layer.biases) b = flat[k++];
  }
}

void flatten_gradients_into(const Gradients& grads, std::span<double> out) {
  std::size_t k = 0;
  for (std::size_t l = 0; l < grads.weights.size(); ++l) {
    for (const double w : grads.weights[l].flat()) out[k++] = w;
    for (const double b : grads.biases[l]) out[k++] = b;
  }
  if (k != out.size()) throw ShapeError("flat gradient buffer size mismatch");
}

AdamState make_adam_state(std::size_t n_params, double lr, double beta1,
                          double beta2, double epsilon) {
  AdamState state;
  state.m.assign(n_params, 0.0);
  state.v.assign(n_params, 0.0);
  state.lr = lr;
  state.beta1 = beta1;
  state.beta2 = beta2;
  state.epsilon = epsilon;
  return state;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ShapeError("parameter, gradient and state sizes differ");
  }
  state.t += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grads[k];
    state.m[k] = state.beta1 * state.m[k] + (1.0 - state.beta1) * g;
    state.v[k] = state.beta2 * state.v[k] + (1.0 - state.beta2) * g * g;
    const double mhat = state.m[k] / bc1;
    const double vhat = state.v[k] / bc2;
    params[k] -= state.lr * mhat / (std::sqrt(vhat) + state.epsilon);
  }
}

namespace {

double loss_at(Mlp& net, std::span<const double> input,
               std::span<const double> target) {
  const std::vector<double> out = forward(net, input);
  return mse_loss(out, target);
}

}  // namespace

double gradient_check(const Mlp& net, std::span<const double> input,
                      std::span<const double> target, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");

  Matrix in(1, input.size());
  std::memcpy(in.data(), input.data(), input.size() * sizeof(double));
  ForwardCache cache;
  const Matrix out = forward(net, in, &cache);
  if (out.size() != target.size()) {
    throw ShapeError("target length does not match the network output");
  }
  Matrix out_grad(1, out.cols());
  const double n = static_cast<double>(out.size());
  for (std::size_t j = 0; j < out.cols(); ++j) {
    out_grad(0, j) = 2.0 * (out(0, j) - target[j]) / n;
  }
  const Gradients grads = backward(net, cache, out_grad);
  std::vector<double> analytic(net.parameter_count());
  flatten_gradients_into(grads, analytic);

  Mlp probe = net;
  std::vector<double> theta = flatten_parameters(net);
  double worst = 0.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double orig = theta[k];
    theta[k] = orig + h;
    unflatten_parameters(theta, probe);
    const double lp = loss_at(probe, input, target);
    theta[k] = orig - h;
    unflatten_parameters(theta, probe);
    const double lm = loss_at(probe, input, target);
    theta[k] = orig;
    const double fd = (lp - lm) / (2.0 * h);
    const double denom = std::max({std::fabs(analytic[k]), std::fabs(fd), 1e-4});
    worst = std::max(worst, std::fabs(analytic[k] - fd) / denom);
  }
  unflatten_parameters(theta, probe);
  return worst;
}

}  // namespace lcr
