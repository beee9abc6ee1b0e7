#include "mosaic/stats/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(ValueKind kind) {
  return kind == ValueKind::Continuous ? "continuous" : "discrete";
}

ValueKind value_kind_from_string(const std::string& text) {
  if (text == "continuous") return ValueKind::Continuous;
  if (text == "discrete") return ValueKind::Discrete;
  throw InputError("unknown value kind '" + text + "'");
}

int Dataset::index(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

bool Dataset::is_target(const std::string& name) const {
  return std::find(intervention_targets.begin(), intervention_targets.end(), name) !=
         intervention_targets.end();
}

void Dataset::validate() const {
  if (variables.empty()) throw InputError("dataset has no variables");
  if (static_cast<std::size_t>(rows.cols()) != variables.size()) {
    throw InputError("dataset has " + std::to_string(rows.cols()) + " columns for " +
                     std::to_string(variables.size()) + " variables");
  }
  if (rows.rows() < 1) throw InputError("dataset has no rows");
  std::vector<std::string> sorted = variables;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("dataset has duplicate variable names");
  }
  for (const auto& t : intervention_targets) {
    if (index(t) < 0) throw InputError("intervention target '" + t + "' is not a dataset variable");
  }
  if (!rows.allFinite()) throw InputError("dataset contains non-finite values");
  if (value_kind == ValueKind::Discrete) {
    if (levels.size() != variables.size()) throw InputError("discrete dataset lacks level counts");
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const double v = rows(i, j);
        if (v < 0 || v != std::floor(v) || v >= levels[j]) {
          throw InputError("discrete column '" + variables[j] + "' holds a value outside 0.." +
                           std::to_string(levels[j] - 1));
        }
      }
    }
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r\"");
    const auto last = cell.find_last_not_of(" \t\r\"");
    out.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  Dataset data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  data.variables = split_line(line);
  if (data.variables.empty()) throw InputError("'" + path.string() + "' has no header row");
  std::vector<double> cells;
  std::size_t nrows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_line(line);
    if (fields.size() != data.variables.size()) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(data.variables.size()) + " cells, found " +
                       std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw InputError(path.string() + ":" + std::to_string(lineno) + ": '" + f +
                         "' is not a number");
      }
      cells.push_back(v);
    }
    ++nrows;
  }
  if (nrows == 0) throw InputError("'" + path.string() + "' has no data rows");
  data.rows.resize(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(data.variables.size()));
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < data.variables.size(); ++j) {
      data.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cells[i * data.variables.size() + j];
    }
  }
  return data;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (std::size_t j = 0; j < data.variables.size(); ++j) {
    out << (j ? "," : "") << data.variables[j];
  }
  out << '\n';
  out.precision(17);
  for (Eigen::Index i = 0; i < data.rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.rows.cols(); ++j) {
      out << (j ? "," : "") << data.rows(i, j);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Eigen::VectorXd equal_frequency_bins(const Eigen::VectorXd& column, int bins) {
  if (bins < 2) throw InputError("equal-frequency binning needs at least 2 bins");
  const auto n = column.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return column[a] < column[b]; });
  Eigen::VectorXd out(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && column[order[j + 1]] == column[order[i]]) ++j;
    // a run of ties takes the bin of its first rank
    const double level = std::min<double>(bins - 1, std::floor(static_cast<double>(i) * bins / n));
    for (Eigen::Index k = i; k <= j; ++k) out[order[k]] = level;
    i = j + 1;
  }
  return out;
}

void make_discrete(Dataset& data, int bins) {
  data.levels.assign(data.variables.size(), 1);
  for (Eigen::Index j = 0; j < data.rows.cols(); ++j) {
    if (bins > 0) data.rows.col(j) = equal_frequency_bins(data.rows.col(j), bins);
    // compact observed levels to 0..k-1
    std::vector<double> values(data.rows.col(j).data(), data.rows.col(j).data() + data.rows.rows());
    for (double v : values) {
      if (v < 0 || v != std::floor(v)) {
        throw InputError("discrete column '" + data.variables[j] + "' holds non-integer value " +
                         std::to_string(v));
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (Eigen::Index i = 0; i < data.rows.rows(); ++i) {
      data.rows(i, j) = static_cast<double>(
          std::lower_bound(values.begin(), values.end(), data.rows(i, j)) - values.begin());
    }
    data.levels[j] = static_cast<int>(values.size());
  }
  data.value_kind = ValueKind::Discrete;
}

}  // namespace mosaic
