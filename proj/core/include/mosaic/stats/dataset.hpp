#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mosaic {

enum class ValueKind { Continuous, Discrete };

const char* to_string(ValueKind kind);
ValueKind value_kind_from_string(const std::string& text);

/// One table of samples. Columns follow `variables`; discrete columns hold
/// level indices 0..levels[j]-1.
struct Dataset {
  std::vector<std::string> variables;
  Eigen::MatrixXd rows;
  std::vector<std::string> intervention_targets;
  ValueKind value_kind = ValueKind::Continuous;
  std::vector<int> levels;

  std::size_t sample_count() const { return static_cast<std::size_t>(rows.rows()); }
  int index(const std::string& name) const;  // -1 if absent
  bool is_target(const std::string& name) const;

  /// Throws InputError on shape, target or level violations.
  void validate() const;
};

/// Header row of names, then numeric rows; blank lines are ignored.
Dataset read_csv(const std::filesystem::path& path);
void write_csv(const Dataset& data, const std::filesystem::path& path);

/// Turns a continuous column into `bins` equal-frequency levels (ties share a level).
Eigen::VectorXd equal_frequency_bins(const Eigen::VectorXd& column, int bins);

/// Converts all columns into discrete levels: with `bins` > 0 every column is
/// binned, otherwise cells must already be non-negative integers.
void make_discrete(Dataset& data, int bins = 0);

}  // namespace mosaic
