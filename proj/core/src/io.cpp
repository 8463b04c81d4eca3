#include "qst/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qst {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string schema_name, std::vector<std::string> columns)
    : schema_name_(std::move(schema_name)), columns_(std::move(columns)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("CsvWriter: cell count does not match columns");
  }
  rows_.push_back(cells);
}

std::string CsvWriter::str() const {
  std::ostringstream out;
  out << "# qst-csv-v1 " << schema_name_ << ": ";
  for (size_t i = 0; i < columns_.size(); ++i) {
    out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
  }
  for (size_t i = 0; i < columns_.size(); ++i) {
    out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
  }
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(j, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json int_matrix_to_json(const Eigen::ArrayXXi& m) {
  Json rows = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(j, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json hermitian_to_json(const Matrix& m) {
  Json j;
  j["dim"] = m.rows();
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      re_row.push_back(m(a, b).real());
      im_row.push_back(m(a, b).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Matrix hermitian_from_json(const Json& j) {
  const int d = j.at("dim").get<int>();
  Matrix m(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      m(a, b) = Complex(j.at("re")[a][b].get<double>(), j.at("im")[a][b].get<double>());
    }
  }
  return m;
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["config"] = config;
  j["master_seed"] = master_seed;
  j["code_version"] = code_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  return j;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string code_version() { return "0.1.0"; }

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  write_file_atomic(path, manifest.to_json().dump(2) + "\n");
}

}  // namespace qst
