#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace galqr {

// Regression dataset: design matrix (one row per observation, intercept
// column included by the loading pipeline when requested), responses, and
// optional left-censoring indicators with a common threshold.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> column_names;  // one per design column
  std::vector<bool> censored;             // empty when no censoring
  double threshold = 0.0;

  int n() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }
  bool has_censoring() const;
  int censored_count() const;
  void validate() const;  // shape, finiteness, censoring consistency
};

// Raw CSV table: header plus numeric columns. Parse failures carry
// row/column context in the exception message.
struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;  // rows x columns

  int column_index(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values);

// Column transform directive: adds name = source^power to the design.
struct ColumnTransform {
  std::string name;
  std::string source;
  double power = 2.0;
};

// Assemble a Dataset from a parsed table. Feature columns default to every
// column other than the response (and censoring indicator); transforms are
// appended after the listed features; the intercept column, when requested,
// leads the design.
struct DatasetSpec {
  std::string response;
  std::vector<std::string> features;      // empty = all remaining numeric columns
  std::optional<std::string> censored;    // 0/1 indicator column
  std::vector<ColumnTransform> transforms;
  bool intercept = true;
  double threshold = 0.0;
};

Dataset build_dataset(const CsvTable& table, const DatasetSpec& spec);

}  // namespace galqr
