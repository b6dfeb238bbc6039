#include "galqr/data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace galqr {

bool Dataset::has_censoring() const {
  for (bool c : censored) {
    if (c) return true;
  }
  return false;
}

int Dataset::censored_count() const {
  int k = 0;
  for (bool c : censored) k += c ? 1 : 0;
  return k;
}

void Dataset::validate() const {
  if (x.rows() != y.size()) throw std::invalid_argument("dataset: design and response sizes differ");
  if (x.rows() == 0) throw std::invalid_argument("dataset: no observations");
  if (!censored.empty() && static_cast<Eigen::Index>(censored.size()) != x.rows()) {
    throw std::invalid_argument("dataset: censoring indicator length mismatch");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("dataset: non-finite values in design or response");
  }
  for (size_t i = 0; i < censored.size(); ++i) {
    if (!censored[i] && y[static_cast<Eigen::Index>(i)] <= threshold) {
      throw std::invalid_argument(
          "dataset: uncensored response at row " + std::to_string(i + 1) +
          " does not exceed the censoring threshold");
    }
  }
}

int CsvTable::column_index(const std::string& name) const {
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return static_cast<int>(j);
  }
  return -1;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
  CsvTable table;
  table.header = split_csv_line(line);
  if (table.header.empty()) throw std::runtime_error("CSV header has no columns: " + path);

  std::vector<std::vector<double>> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error(path + ": row " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " fields, expected " +
                               std::to_string(table.header.size()));
    }
    std::vector<double> row(cells.size());
    for (size_t j = 0; j < cells.size(); ++j) {
      try {
        size_t pos = 0;
        row[j] = std::stod(cells[j], &pos);
        if (pos != cells[j].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": row " + std::to_string(lineno) + ", column '" +
                                 table.header[j] + "': cannot parse '" + cells[j] +
                                 "' as a number");
      }
      if (!std::isfinite(row[j])) {
        throw std::runtime_error(path + ": row " + std::to_string(lineno) + ", column '" +
                                 table.header[j] + "': non-finite value");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.header.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t j = 0; j < header.size(); ++j) {
    out << header[j] << (j + 1 < header.size() ? "," : "\n");
  }
  char buf[40];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", values(i, j));
      out << buf << (j + 1 < values.cols() ? "," : "\n");
    }
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

Dataset build_dataset(const CsvTable& table, const DatasetSpec& spec) {
  const int resp = table.column_index(spec.response);
  if (resp < 0) {
    throw std::runtime_error("response column '" + spec.response + "' not found in CSV header");
  }
  int cens = -1;
  if (spec.censored) {
    cens = table.column_index(*spec.censored);
    if (cens < 0) {
      throw std::runtime_error("censoring column '" + *spec.censored + "' not found in CSV header");
    }
  }

  std::vector<std::string> features = spec.features;
  if (features.empty()) {
    for (const auto& name : table.header) {
      if (name != spec.response && (!spec.censored || name != *spec.censored)) {
        features.push_back(name);
      }
    }
  }
  if (features.empty() && spec.transforms.empty() && !spec.intercept) {
    throw std::runtime_error("no feature columns selected");
  }

  const Eigen::Index n = table.values.rows();
  const int d = static_cast<int>(features.size() + spec.transforms.size()) + (spec.intercept ? 1 : 0);
  Dataset data;
  data.x.resize(n, d);
  data.y = table.values.col(resp);
  data.threshold = spec.threshold;

  int col = 0;
  if (spec.intercept) {
    data.x.col(col).setOnes();
    data.column_names.push_back("intercept");
    ++col;
  }
  for (const auto& name : features) {
    const int idx = table.column_index(name);
    if (idx < 0) throw std::runtime_error("feature column '" + name + "' not found in CSV header");
    data.x.col(col) = table.values.col(idx);
    data.column_names.push_back(name);
    ++col;
  }
  for (const auto& tr : spec.transforms) {
    const int idx = table.column_index(tr.source);
    if (idx < 0) {
      throw std::runtime_error("transform source column '" + tr.source + "' not found in CSV header");
    }
    data.x.col(col) = table.values.col(idx).array().pow(tr.power);
    data.column_names.push_back(tr.name.empty() ? tr.source + "^" + std::to_string(tr.power)
                                                : tr.name);
    ++col;
  }

  if (cens >= 0) {
    data.censored.resize(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = table.values(i, cens);
      if (v != 0.0 && v != 1.0) {
        throw std::runtime_error("censoring column must be 0/1; row " + std::to_string(i + 2) +
                                 " has " + std::to_string(v));
      }
      data.censored[static_cast<size_t>(i)] = v == 1.0;
    }
  }
  data.validate();
  return data;
}

}  // namespace galqr
