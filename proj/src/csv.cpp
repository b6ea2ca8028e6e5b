#include "lcr/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lcr {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw FormatError("bad numeric field '" + token + "' in " + path.string());
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string read_header(std::ifstream& in, const std::filesystem::path& path) {
  std::string header;
  if (!std::getline(in, header)) {
    throw FormatError("empty file: " + path.string());
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return header;
}

/// Parses every data row of `path`, requiring `n_fields` per row.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path,
                                           const std::string& expected_header,
                                           std::size_t n_fields) {
  std::ifstream in = open_for_read(path);
  const std::string header = read_header(in, path);
  if (header != expected_header) {
    throw FormatError("expected header '" + expected_header + "' in " +
                      path.string() + ", found '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != n_fields) {
      throw FormatError("wrong field count in " + path.string());
    }
    std::vector<double> row(n_fields);
    for (std::size_t i = 0; i < n_fields; ++i) {
      row[i] = parse_double(fields[i], path);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out = open_for_write(path);
  out << "t,x,y,z\n";
  for (std::size_t t = 0; t < traj.size(); ++t) {
    out << t << ',' << format_double(traj.x[t]) << ',' << format_double(traj.y[t])
        << ',' << format_double(traj.z[t]) << '\n';
  }
  finish_write(out, path);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path,
                               const LogisticSystemParams& params) {
  const auto rows = read_rows(path, "t,x,y,z", 4);
  if (rows.size() < 2) {
    throw FormatError("trajectory must have at least 2 rows: " + path.string());
  }
  Trajectory traj;
  traj.params = params;
  traj.x.reserve(rows.size());
  traj.y.reserve(rows.size());
  traj.z.reserve(rows.size());
  for (const auto& row : rows) {
    for (int c = 1; c <= 3; ++c) {
      if (!(row[c] >= 0.0 && row[c] <= 1.0)) {
        throw FormatError("trajectory value outside [0,1] in " + path.string());
      }
    }
    traj.x.push_back(row[1]);
    traj.y.push_back(row[2]);
    traj.z.push_back(row[3]);
  }
  return traj;
}

void write_dataset_csv(const std::filesystem::path& path, const EmbeddedDataset& ds) {
  std::ofstream out = open_for_write(path);
  out << "y_t,y_prev,x_prev,x_target,z_truth\n";
  for (std::size_t k = 0; k < ds.size(); ++k) {
    out << format_double(ds.y_embed(k, 0)) << ',' << format_double(ds.y_embed(k, 1))
        << ',' << format_double(ds.x_prev[k]) << ',' << format_double(ds.x_target[k])
        << ',' << format_double(ds.z_truth[k]) << '\n';
  }
  finish_write(out, path);
}

EmbeddedDataset read_dataset_csv(const std::filesystem::path& path,
                                 const LogisticSystemParams& params) {
  const auto rows = read_rows(path, "y_t,y_prev,x_prev,x_target,z_truth", 5);
  if (rows.empty()) throw FormatError("dataset has no samples: " + path.string());
  EmbeddedDataset ds;
  ds.params = params;
  ds.y_embed = Matrix(rows.size(), 2);
  ds.x_prev.resize(rows.size());
  ds.x_target.resize(rows.size());
  ds.z_truth.resize(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    ds.y_embed(k, 0) = rows[k][0];
    ds.y_embed(k, 1) = rows[k][1];
    ds.x_prev[k] = rows[k][2];
    ds.x_target[k] = rows[k][3];
    ds.z_truth[k] = rows[k][4];
  }
  return ds;
}

bool is_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  const std::string header = read_header(in, path);
  if (header == "y_t,y_prev,x_prev,x_target,z_truth") return true;
  if (header == "t,x,y,z") return false;
  throw FormatError("unrecognized CSV header in " + path.string());
}

void write_learning_curves_csv(const std::filesystem::path& path,
                               const std::vector<RunRecord>& records) {
  std::ofstream out = open_for_write(path);
  out << "restart,epoch,loss\n";
  for (const RunRecord& rec : records) {
    for (std::size_t e = 0; e < rec.learning_curve.size(); ++e) {
      out << rec.restart_index << ',' << e << ','
          << format_double(rec.learning_curve[e]) << '\n';
    }
  }
  finish_write(out, path);
}

void write_run_metrics_csv(const std::filesystem::path& path,
                           const std::vector<RunRecord>& records) {
  std::ofstream out = open_for_write(path);
  out << "restart,seed,final_train_loss,r2_prediction,r2_reconstruction,"
         "slope_sign,cluster\n";
  for (const RunRecord& rec : records) {
    out << rec.restart_index << ',' << rec.seed << ','
        << format_double(rec.final_train_loss) << ','
        << format_double(rec.r2_prediction) << ','
        << format_double(rec.r2_reconstruction) << ','
        << rec.reconstruction_slope_sign << ',' << to_string(rec.cluster) << '\n';
  }
  finish_write(out, path);
}

void write_pairs_csv(const std::filesystem::path& path, const std::string& name_a,
                     const std::string& name_b, std::span<const double> a,
                     std::span<const double> b) {
  if (a.size() != b.size()) throw LengthError("pair columns differ in length");
  std::ofstream out = open_for_write(path);
  out << name_a << ',' << name_b << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
  }
  finish_write(out, path);
}

void write_indexed_pairs_csv(const std::filesystem::path& path,
                             const std::string& name_a, const std::string& name_b,
                             std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthError("pair columns differ in length");
  std::ofstream out = open_for_write(path);
  out << "t," << name_a << ',' << name_b << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << i << ',' << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
  }
  finish_write(out, path);
}

}  // namespace lcr
