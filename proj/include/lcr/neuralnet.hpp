#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcr/errors.hpp"
#include "lcr/matrix.hpp"

namespace lcr {

enum class Activation { kTanh, kLinear };

const char* to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// One dense layer: out = act(weights * in + biases).
struct LayerParams {
  Matrix weights;              ///< out_dim x in_dim
  std::vector<double> biases;  ///< out_dim
  Activation activation = Activation::kTanh;

  std::size_t in_dim() const { return weights.cols(); }
  std::size_t out_dim() const { return weights.rows(); }
};

/// A plain dense feedforward network.
struct Mlp {
  std::vector<LayerParams> layers;

  std::size_t input_dim() const { return layers.front().in_dim(); }
  std::size_t output_dim() const { return layers.back().out_dim(); }
  std::size_t parameter_count() const;
};

/// Glorot-uniform weights (uniform in +-sqrt(6/(in+out))), zero biases.
/// layer_dims lists dims including input and output; activations has one entry
/// per layer. Deterministic given seed. Throws ShapeError on mismatched lists
/// or zero-width layers.
Mlp init_network(const std::vector<std::size_t>& layer_dims,
                 const std::vector<Activation>& activations,
                 std::uint64_t seed);

/// Per-layer post-activations plus the original input; everything backward
/// needs. The input to layer l is activations[l-1] (or `input` for l = 0).
struct ForwardCache {
  Matrix input;
  std::vector<Matrix> activations;
};

/// Batched forward pass: one sample per row. Fills *cache when non-null.
Matrix forward(const Mlp& net, const Matrix& input, ForwardCache* cache = nullptr);

/// Single-sample convenience overload.
std::vector<double> forward(const Mlp& net, std::span<const double> input);

/// Mean of squared differences. Throws ShapeError on length mismatch or
/// empty input.
double mse_loss(std::span<const double> pred, std::span<const double> target);

/// Gradients of a scalar loss with respect to every weight, bias and the
/// network input (the input block is what chains subnetworks together).
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  Matrix input;
};

/// Reverse-mode pass. `output_grad` is dLoss/d(output), one row per sample of
/// the forward call that produced `cache`.
Gradients backward(const Mlp& net, const ForwardCache& cache,
                   const Matrix& output_grad);

/// Flat parameter vector: layers in order, weights row-major then biases.
std::vector<double> flatten_parameters(const Mlp& net);
void flatten_parameters_into(const Mlp& net, std::span<double> out);
void unflatten_parameters(std::span<const double> flat, Mlp& net);
void flatten_gradients_into(const Gradients& grads, std::span<double> out);

/// ADAM accumulators over a flat parameter vector.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

AdamState make_adam_state(std::size_t n_params, double lr = 1e-3,
                          double beta1 = 0.9, double beta2 = 0.999,
                          double epsilon = 1e-8);

/// One bias-corrected ADAM update, in place:
///   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
///   theta <- theta - lr * mhat / (sqrt(vhat) + eps)
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state);

/// Compares backward against central finite differences of the forward+MSE
/// scalar for every parameter and returns the worst relative discrepancy,
/// where relative means |a-b| / max(|a|, |b|, 1e-4) so that near-zero
/// derivatives stay meaningful.
double gradient_check(const Mlp& net, std::span<const double> input,
                      std::span<const double> target, double h);

namespace detail {
/// Elementwise tanh; lives in its own translation unit so it can be compiled
/// for the vectorized libm entry points.
void tanh_inplace(double* values, std::size_t n);
}  // namespace detail

}  // namespace lcr
