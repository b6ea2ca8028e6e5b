#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lcr/errors.hpp"

// A discrete-time dynamical system carries a state s_t updated by a fixed
// rule, s_{t+1} = f(s_t), of which an observer usually sees only a scalar
// readout x_t = g(s_t). Lagged copies of such a readout reconstruct the state
// up to a continuous change of coordinates, which is what makes a hidden
// component recoverable from observations at all. This module provides the
// concrete system used throughout: three logistic maps where the hidden one
// drives the two observed ones, plus the closed-form inverse that reads the
// driver straight out of two consecutive observations.

namespace lcr {

/// Parameters of the three coupled logistic maps: a hidden driver z and two
/// observed maps x and y whose growth it modulates.
struct LogisticSystemParams {
  double r = 3.99;       ///< logistic growth parameter, shared by all three maps
  double beta_xz = 0.2;  ///< coupling strength z -> x
  double beta_yz = 0.2;  ///< coupling strength z -> y

  /// Throws ConfigError unless r > 0 and both couplings are nonnegative.
  void validate() const;

  bool operator==(const LogisticSystemParams&) const = default;
};

struct SystemState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Aligned (x, y, z) series. z is the hidden ground truth; training code never
/// sees it as an input.
struct Trajectory {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  LogisticSystemParams params;
  std::uint64_t seed = 0;

  std::size_t size() const { return x.size(); }
};

/// One update of the coupled system:
///   x' = r * x * (1 - x) * (1 - beta_xz * z)
///   y' = r * y * (1 - y) * (1 - beta_yz * z)
///   z' = r * z * (1 - z)
/// z advances autonomously and both observed maps read the pre-step z. May
/// leave [0,1] for r > 4; callers validate.
SystemState step(const SystemState& state, const LogisticSystemParams& params);

/// Iterates `step` from an initial state drawn uniformly from (0,1)^3,
/// discarding `burn_in` points and keeping `n_points`. Any state outside
/// [0,1]^3 rejects the whole attempt and a fresh initial state is drawn from
/// the same stream; throws DivergenceError after 100 rejected attempts.
/// Deterministic given (params, n_points, burn_in, seed).
Trajectory simulate(const LogisticSystemParams& params, std::size_t n_points,
                    std::size_t burn_in, std::uint64_t seed);

/// Exact inverse of the y update: recovers the hidden z_{t-1} from the pair
/// (y_t, y_{t-1}). Throws SingularInputError when y_prev*(1-y_prev) = 0 or
/// beta_yz = 0, where the update carries no invertible trace of z.
double phi_oracle(double y_t, double y_prev, const LogisticSystemParams& params);

/// The inverse composed with the z map: recovers z_t from (y_t, y_{t-1}).
double h_compose_phi(double y_t, double y_prev, const LogisticSystemParams& params);

}  // namespace lcr
