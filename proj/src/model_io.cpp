#include "lcr/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace lcr {

using nlohmann::json;

namespace {

json require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field: ") + key);
  }
  return j.at(key);
}

}  // namespace

json mlp_to_json(const Mlp& net) {
  json j;
  std::vector<std::size_t> dims;
  dims.push_back(net.input_dim());
  json weights = json::array();
  json biases = json::array();
  json activations = json::array();
  for (const LayerParams& layer : net.layers) {
    dims.push_back(layer.out_dim());
    weights.push_back(layer.weights.flat());
    biases.push_back(layer.biases);
    activations.push_back(to_string(layer.activation));
  }
  j["layer_dims"] = dims;
  j["activations"] = activations;
  j["weights"] = weights;
  j["biases"] = biases;
  return j;
}

Mlp mlp_from_json(const json& j) {
  const json dims_j = require(j, "layer_dims");
  const json acts_j = require(j, "activations");
  const json weights_j = require(j, "weights");
  const json biases_j = require(j, "biases");
  if (!dims_j.is_array() || dims_j.size() < 2) {
    throw FormatError("layer_dims must list at least 2 dimensions");
  }
  const std::size_t n_layers = dims_j.size() - 1;
  if (acts_j.size() != n_layers || weights_j.size() != n_layers ||
      biases_j.size() != n_layers) {
    throw ShapeError("layer counts are inconsistent in the model file");
  }

  Mlp net;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const std::size_t in = dims_j.at(l).get<std::size_t>();
    const std::size_t out = dims_j.at(l + 1).get<std::size_t>();
    if (in == 0 || out == 0) throw ShapeError("zero-width layer in model file");
    const auto flat = weights_j.at(l).get<std::vector<double>>();
    if (flat.size() != in * out) {
      throw ShapeError("weight block does not match layer_dims");
    }
    LayerParams layer;
    layer.weights = Matrix(out, in);
    std::copy(flat.begin(), flat.end(), layer.weights.data());
    layer.biases = biases_j.at(l).get<std::vector<double>>();
    if (layer.biases.size() != out) {
      throw ShapeError("bias block does not match layer_dims");
    }
    layer.activation = activation_from_string(acts_j.at(l).get<std::string>());
    net.layers.push_back(std::move(layer));
  }
  return net;
}

void save_model(const std::filesystem::path& path, const MapperCoachNet& net) {
  net.validate();
  json j;
  j["format_version"] = kModelFormatVersion;
  j["mapper"] = mlp_to_json(net.mapper);
  j["coach"] = mlp_to_json(net.coach);
  save_json(path, j);
}

MapperCoachNet load_model(const std::filesystem::path& path) {
  const json j = load_json(path);
  if (require(j, "format_version").get<int>() != kModelFormatVersion) {
    throw FormatError("unsupported model format version");
  }
  MapperCoachNet net;
  net.mapper = mlp_from_json(require(j, "mapper"));
  net.coach = mlp_from_json(require(j, "coach"));
  net.validate();
  return net;
}

json report_to_json(const EvaluationReport& report) {
  json j;
  j["format_version"] = kReportFormatVersion;
  json records = json::array();
  for (const RunRecord& rec : report.records) {
    json r;
    r["restart_index"] = rec.restart_index;
    r["seed"] = rec.seed;
    r["learning_curve"] = rec.learning_curve;
    r["final_train_loss"] = rec.final_train_loss;
    r["r2_prediction"] = rec.r2_prediction;
    r["r2_reconstruction"] = rec.r2_reconstruction;
    r["reconstruction_slope_sign"] = rec.reconstruction_slope_sign;
    r["cluster"] = to_string(rec.cluster);
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  j["best_run"] = report.best_run;
  j["cluster_counts"] = {{"failed", report.n_failed},
                         {"local_minimum", report.n_local_minimum},
                         {"converged", report.n_converged}};
  if (report.has_correlation) {
    j["pred_rec_correlation"] = report.pred_rec_correlation;
  }
  if (report.has_oracle_ceiling) {
    j["oracle_ceiling"] = report.oracle_ceiling;
  }
  return j;
}

EvaluationReport report_from_json(const json& j) {
  if (require(j, "format_version").get<int>() != kReportFormatVersion) {
    throw FormatError("unsupported report format version");
  }
  EvaluationReport report;
  for (const json& r : require(j, "records")) {
    RunRecord rec;
    rec.restart_index = require(r, "restart_index").get<std::size_t>();
    rec.seed = require(r, "seed").get<std::uint64_t>();
    // NaN losses (aborted runs) serialize as nulls; map them back.
    for (const json& v : require(r, "learning_curve")) {
      rec.learning_curve.push_back(v.is_null()
                                       ? std::numeric_limits<double>::quiet_NaN()
                                       : v.get<double>());
    }
    const json loss = require(r, "final_train_loss");
    rec.final_train_loss = loss.is_null()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : loss.get<double>();
    rec.r2_prediction = require(r, "r2_prediction").get<double>();
    rec.r2_reconstruction = require(r, "r2_reconstruction").get<double>();
    rec.reconstruction_slope_sign =
        require(r, "reconstruction_slope_sign").get<int>();
    rec.cluster = cluster_from_string(require(r, "cluster").get<std::string>());
    report.records.push_back(std::move(rec));
  }
  report.best_run = require(j, "best_run").get<std::size_t>();
  const json counts = require(j, "cluster_counts");
  report.n_failed = require(counts, "failed").get<std::size_t>();
  report.n_local_minimum = require(counts, "local_minimum").get<std::size_t>();
  report.n_converged = require(counts, "converged").get<std::size_t>();
  if (j.contains("pred_rec_correlation")) {
    report.has_correlation = true;
    report.pred_rec_correlation = j.at("pred_rec_correlation").get<double>();
  }
  if (j.contains("oracle_ceiling")) {
    report.has_oracle_ceiling = true;
    report.oracle_ceiling = j.at("oracle_ceiling").get<double>();
  }
  return report;
}

void save_report(const std::filesystem::path& path, const EvaluationReport& report) {
  save_json(path, report_to_json(report));
}

EvaluationReport load_report(const std::filesystem::path& path) {
  return report_from_json(load_json(path));
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace lcr
