#include "lcr/embedding.hpp"

namespace lcr {

Matrix delay_embed(std::span<const double> series, std::size_t dim,
                   std::size_t delay) {
  if (dim < 1) throw ConfigError("embedding dimension must be at least 1");
  if (delay < 1) throw ConfigError("embedding delay must be at least 1");
  const std::size_t span = (dim - 1) * delay;
  if (series.size() < span + 1) {
    throw InsufficientLengthError("series too short for requested embedding");
  }
  const std::size_t n_rows = series.size() - span;
  Matrix out(n_rows, dim);
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      out(i, d) = series[i + span - d * delay];
    }
  }
  return out;
}

EmbeddedDataset build_dataset(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2) throw InsufficientLengthError("trajectory must have at least 2 points");

  EmbeddedDataset ds;
  ds.params = traj.params;
  ds.y_embed = delay_embed(traj.y, 2, 1);
  const std::size_t m = n - 1;
  ds.x_prev.assign(traj.x.begin(), traj.x.begin() + m);
  ds.x_target.assign(traj.x.begin() + 1, traj.x.end());
  ds.z_truth.assign(traj.z.begin(), traj.z.begin() + m);
  return ds;
}

namespace {

EmbeddedDataset take_range(const EmbeddedDataset& ds, std::size_t begin,
                           std::size_t end) {
  EmbeddedDataset out;
  out.params = ds.params;
  out.y_embed = Matrix(end - begin, 2);
  for (std::size_t k = begin; k < end; ++k) {
    out.y_embed(k - begin, 0) = ds.y_embed(k, 0);
    out.y_embed(k - begin, 1) = ds.y_embed(k, 1);
  }
  out.x_prev.assign(ds.x_prev.begin() + begin, ds.x_prev.begin() + end);
  out.x_target.assign(ds.x_target.begin() + begin, ds.x_target.begin() + end);
  out.z_truth.assign(ds.z_truth.begin() + begin, ds.z_truth.begin() + end);
  return out;
}

}  // namespace

std::pair<EmbeddedDataset, EmbeddedDataset> split(const EmbeddedDataset& ds,
                                                  std::size_t n_train) {
  if (n_train == 0 || n_train >= ds.size()) {
    throw BoundsError("n_train must lie strictly between 0 and the dataset size");
  }
  return {take_range(ds, 0, n_train), take_range(ds, n_train, ds.size())};
}

}  // namespace lcr
