#include "lcr/dynamics.hpp"

#include "lcr/rng.hpp"

namespace lcr {

void LogisticSystemParams::validate() const {
  if (!(r > 0.0)) throw ConfigError("r must be positive");
  if (beta_xz < 0.0) throw ConfigError("beta_xz must be nonnegative");
  if (beta_yz < 0.0) throw ConfigError("beta_yz must be nonnegative");
}

SystemState step(const SystemState& s, const LogisticSystemParams& p) {
  SystemState next;
  next.x = p.r * s.x * (1.0 - s.x) * (1.0 - p.beta_xz * s.z);
  next.y = p.r * s.y * (1.0 - s.y) * (1.0 - p.beta_yz * s.z);
  next.z = p.r * s.z * (1.0 - s.z);
  return next;
}

namespace {

bool in_unit_cube(const SystemState& s) {
  return s.x >= 0.0 && s.x <= 1.0 && s.y >= 0.0 && s.y <= 1.0 && s.z >= 0.0 &&
         s.z <= 1.0;
}

}  // namespace

Trajectory simulate(const LogisticSystemParams& params, std::size_t n_points,
                    std::size_t burn_in, std::uint64_t seed) {
  params.validate();
  if (n_points < 2) throw ConfigError("n_points must be at least 2");

  constexpr int kMaxAttempts = 100;
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SystemState s;
    s.x = rng.uniform_open01();
    s.y = rng.uniform_open01();
    s.z = rng.uniform_open01();

    Trajectory traj;
    traj.params = params;
    traj.seed = seed;
    traj.x.reserve(n_points);
    traj.y.reserve(n_points);
    traj.z.reserve(n_points);

    bool rejected = false;
    const std::size_t total = burn_in + n_points;
    for (std::size_t t = 0; t < total; ++t) {
      s = step(s, params);
      if (!in_unit_cube(s)) {
        rejected = true;
        break;
      }
      if (t >= burn_in) {
        traj.x.push_back(s.x);
        traj.y.push_back(s.y);
        traj.z.push_back(s.z);
      }
    }
    if (!rejected) return traj;
  }
  throw DivergenceError("no bounded trajectory found in 100 attempts");
}

double phi_oracle(double y_t, double y_prev, const LogisticSystemParams& p) {
  if (p.beta_yz == 0.0) {
    throw SingularInputError("beta_yz is zero: y carries no trace of z");
  }
  const double denom = p.r * y_prev * (1.0 - y_prev);
  if (denom == 0.0) {
    throw SingularInputError("y_prev at 0 or 1: the y update is not invertible there");
  }
  return (1.0 - y_t / denom) / p.beta_yz;
}

double h_compose_phi(double y_t, double y_prev, const LogisticSystemParams& p) {
  const double phi = phi_oracle(y_t, y_prev, p);
  return p.r * phi * (1.0 - phi);
}

}  // namespace lcr
