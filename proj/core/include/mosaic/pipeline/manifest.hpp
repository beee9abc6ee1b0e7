#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mosaic/stats/dataset.hpp"

namespace mosaic {

/// One manifest entry. Data entries name a CSV file; oracle entries list the
/// observed variables instead and are answered from a supplied graph.
struct ManifestEntry {
  std::filesystem::path csv_path;  // empty for oracle entries
  std::vector<std::string> variables;
  std::vector<std::string> intervention_targets;
  ValueKind value_kind = ValueKind::Continuous;
  int bins = 0;
};

/// JSON array of {csv_path | variables, intervention_targets, value_kind, bins?}.
/// Relative CSV paths are resolved against `base_dir`.
std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::filesystem::path& base_dir = {});
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::string manifest_to_json(const std::vector<ManifestEntry>& entries, int indent = 2);

/// Reads and validates the CSV of a data entry, discretizing when asked to.
Dataset load_dataset(const ManifestEntry& entry);

}  // namespace mosaic
