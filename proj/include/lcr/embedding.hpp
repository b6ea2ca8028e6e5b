#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lcr/dynamics.hpp"
#include "lcr/matrix.hpp"

namespace lcr {

/// Supervised samples assembled from a trajectory: inputs are the embedded y
/// state [y_t, y_{t-1}] and x_{t-1}; the target is x_t. z_{t-1} rides along as
/// held-out ground truth for evaluation only and is never a training input.
///
/// For a length-N trajectory there are M = N-1 samples, aligned so that
/// sample k has y_embed row [y_{k+1}, y_k], x_prev = x_k, x_target = x_{k+1}
/// and z_truth = z_k.
struct EmbeddedDataset {
  Matrix y_embed;                ///< M x 2, current value first
  std::vector<double> x_prev;    ///< M
  std::vector<double> x_target;  ///< M
  std::vector<double> z_truth;   ///< M, hidden ground truth
  LogisticSystemParams params;   ///< parameters of the generating system

  std::size_t size() const { return x_prev.size(); }
};

/// Takens delay embedding. Row i = [s_{i+(dim-1)*delay}, s_{i+(dim-2)*delay},
/// ..., s_i], most recent value first. Row count = len - (dim-1)*delay.
/// Throws InsufficientLengthError when the series is too short and
/// ConfigError when dim or delay is zero.
Matrix delay_embed(std::span<const double> series, std::size_t dim,
                   std::size_t delay);

/// Throws InsufficientLengthError for trajectories shorter than 2.
EmbeddedDataset build_dataset(const Trajectory& traj);

/// Chronological split: the first n_train samples form the training set, the
/// remainder the test set. Throws BoundsError unless 0 < n_train < size.
std::pair<EmbeddedDataset, EmbeddedDataset> split(const EmbeddedDataset& ds,
                                                  std::size_t n_train);

}  // namespace lcr
