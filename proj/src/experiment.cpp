#include "lcr/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "lcr/rng.hpp"

namespace lcr {

const char* to_string(Cluster c) {
  switch (c) {
    case Cluster::kFailed:
      return "failed";
    case Cluster::kLocalMinimum:
      return "local_minimum";
    case Cluster::kConverged:
      return "converged";
  }
  return "unknown";
}

Cluster cluster_from_string(const std::string& name) {
  if (name == "failed") return Cluster::kFailed;
  if (name == "local_minimum") return Cluster::kLocalMinimum;
  if (name == "converged") return Cluster::kConverged;
  throw FormatError("unknown cluster label: " + name);
}

namespace {

struct MomentSums {
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
};

bool is_constant(std::span<const double> v) {
  for (const double x : v) {
    if (x != v.front()) return false;
  }
  return true;
}

MomentSums centered_moments(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthError("series lengths differ");
  if (a.size() < 2) throw LengthError("need at least 2 samples");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  MomentSums s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    s.cov += da * db;
    s.var_a += da * da;
    s.var_b += db * db;
  }
  return s;
}

}  // namespace

double pearson_r(std::span<const double> a, std::span<const double> b) {
  const MomentSums s = centered_moments(a, b);
  // A constant series has zero variance by definition; the computed sum can
  // come out as rounding noise instead, so detect the degenerate case exactly.
  if (s.var_a == 0.0 || s.var_b == 0.0 || is_constant(a) || is_constant(b)) {
    return 0.0;
  }
  return s.cov / std::sqrt(s.var_a * s.var_b);
}

double r_squared(std::span<const double> a, std::span<const double> b) {
  const double r = pearson_r(a, b);
  const double r2 = r * r;
  return r2 > 1.0 ? 1.0 : r2;
}

int slope_sign(std::span<const double> truth, std::span<const double> estimate) {
  const MomentSums s = centered_moments(truth, estimate);
  if (is_constant(truth) || is_constant(estimate)) return 0;
  if (s.cov > 0.0) return 1;
  if (s.cov < 0.0) return -1;
  return 0;
}

Cluster classify(double r2_prediction, const ClusterThresholds& thresholds) {
  if (r2_prediction >= thresholds.converged) return Cluster::kConverged;
  if (r2_prediction >= thresholds.failed_below) return Cluster::kLocalMinimum;
  return Cluster::kFailed;
}

void classify_runs(std::vector<RunRecord>& records,
                   const ClusterThresholds& thresholds) {
  for (RunRecord& rec : records) {
    rec.cluster = classify(rec.r2_prediction, thresholds);
  }
}

double pred_vs_rec_correlation(const std::vector<RunRecord>& records) {
  std::vector<double> pred;
  std::vector<double> rec;
  for (const RunRecord& r : records) {
    if (r.cluster == Cluster::kFailed) continue;
    pred.push_back(r.r2_prediction);
    rec.push_back(r.r2_reconstruction);
  }
  if (pred.size() < 2) {
    throw InsufficientDataError("need at least 2 non-failed runs");
  }
  return pearson_r(pred, rec);
}

double oracle_ceiling(const EmbeddedDataset& ds) {
  std::vector<double> phi(ds.size());
  for (std::size_t k = 0; k < ds.size(); ++k) {
    phi[k] = phi_oracle(ds.y_embed(k, 0), ds.y_embed(k, 1), ds.params);
  }
  return r_squared(phi, ds.z_truth);
}

namespace {

bool all_finite(std::span<const double> v) {
  for (const double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

RunRecord evaluate_one_restart(std::size_t index, std::uint64_t master_seed,
                               const EmbeddedDataset& train_set,
                               const EmbeddedDataset& test_set,
                               const TrainingConfig& base_cfg,
                               MapperCoachNet* trained_out) {
  RunRecord rec;
  rec.restart_index = index;
  rec.seed = mix_seed(master_seed, index);

  MapperCoachNet net =
      make_mapper_coach(base_cfg.hidden_width, base_cfg.hidden_depth, rec.seed);
  TrainingConfig cfg = base_cfg;
  cfg.seed = mix_seed(rec.seed, 3);

  try {
    rec.learning_curve = train(net, train_set, cfg);
    rec.final_train_loss = rec.learning_curve.back();

    const std::vector<double> pred = predict(net, test_set.y_embed, test_set.x_prev);
    const std::vector<double> z_hat = reconstruct(net, test_set.y_embed);
    if (std::isfinite(rec.final_train_loss) && all_finite(pred) &&
        all_finite(z_hat)) {
      rec.r2_prediction = r_squared(pred, test_set.x_target);
      rec.r2_reconstruction = r_squared(z_hat, test_set.z_truth);
      rec.reconstruction_slope_sign = slope_sign(test_set.z_truth, z_hat);
    }
  } catch (const std::exception&) {
    // The run is recorded as failed; other restarts continue.
    rec.final_train_loss = std::numeric_limits<double>::quiet_NaN();
    rec.r2_prediction = 0.0;
    rec.r2_reconstruction = 0.0;
    rec.reconstruction_slope_sign = 0;
  }
  rec.learning_curve.resize(base_cfg.epochs,
                            std::numeric_limits<double>::quiet_NaN());
  if (trained_out != nullptr) *trained_out = std::move(net);
  return rec;
}

}  // namespace

EvaluationReport run_restarts(const EmbeddedDataset& train_set,
                              const EmbeddedDataset& test_set,
                              const TrainingConfig& cfg, std::size_t n_restarts,
                              std::uint64_t master_seed, std::size_t jobs,
                              const ClusterThresholds& thresholds,
                              std::vector<MapperCoachNet>* trained_out) {
  if (n_restarts < 1) throw ConfigError("n_restarts must be at least 1");
  cfg.validate(train_set.size());

  EvaluationReport report;
  report.records.resize(n_restarts);
  if (trained_out != nullptr) trained_out->resize(n_restarts);

  const auto run_one = [&](std::size_t i) {
    report.records[i] = evaluate_one_restart(
        i, master_seed, train_set, test_set, cfg,
        trained_out != nullptr ? &(*trained_out)[i] : nullptr);
  };

  const std::size_t n_workers = std::min(jobs > 0 ? jobs : std::size_t{1},
                                         n_restarts);
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < n_restarts; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n_restarts) return;
          run_one(i);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }

  classify_runs(report.records, thresholds);

  for (std::size_t i = 0; i < n_restarts; ++i) {
    const RunRecord& rec = report.records[i];
    switch (rec.cluster) {
      case Cluster::kFailed:
        ++report.n_failed;
        break;
      case Cluster::kLocalMinimum:
        ++report.n_local_minimum;
        break;
      case Cluster::kConverged:
        ++report.n_converged;
        break;
    }
    if (rec.r2_prediction > report.records[report.best_run].r2_prediction) {
      report.best_run = i;
    }
  }

  try {
    report.pred_rec_correlation = pred_vs_rec_correlation(report.records);
    report.has_correlation = true;
  } catch (const InsufficientDataError&) {
    report.has_correlation = false;
  }
  try {
    report.oracle_ceiling = oracle_ceiling(test_set);
    report.has_oracle_ceiling = true;
  } catch (const Error&) {
    report.has_oracle_ceiling = false;
  }
  return report;
}

}  // namespace lcr
