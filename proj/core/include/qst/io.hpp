#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qst/hermitian.hpp"

namespace qst {

using Json = nlohmann::ordered_json;

// Fixed-format number rendering for CSV cells ("%.12g"), so reruns are
// byte-comparable.
std::string format_number(double v);

// CSV table with a '#'-prefixed schema comment as the first line.
class CsvWriter {
 public:
  CsvWriter(std::string schema_name, std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::string schema_name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Write-to-temp-then-rename, so partially written files are never visible.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

Json matrix_to_json(const Eigen::MatrixXd& m);
Json int_matrix_to_json(const Eigen::ArrayXXi& m);
// Hermitian matrix flattened as {"dim": d, "re": [[..]], "im": [[..]]}.
Json hermitian_to_json(const Matrix& m);
Matrix hermitian_from_json(const Json& j);

struct RunManifest {
  std::string command;
  Json config;
  std::uint64_t master_seed = 0;
  std::string code_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  Json to_json() const;
};

std::string current_timestamp();
std::string code_version();

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace qst
