#include "mosaic/pipeline/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mosaic/errors.hpp"

namespace mosaic {

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw InputError("manifest must be a non-empty JSON array");
  std::vector<ManifestEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "manifest entry " + std::to_string(i);
    try {
      ManifestEntry entry;
      if (item.contains("csv_path")) {
        std::filesystem::path p = item.at("csv_path").get<std::string>();
        entry.csv_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
      } else if (item.contains("variables")) {
        entry.variables = item.at("variables").get<std::vector<std::string>>();
        if (entry.variables.size() < 2) throw InputError(where + ": needs at least two variables");
      } else {
        throw InputError(where + ": needs csv_path or variables");
      }
      if (item.contains("intervention_targets")) {
        entry.intervention_targets = item.at("intervention_targets").get<std::vector<std::string>>();
      }
      if (item.contains("value_kind")) entry.value_kind = value_kind_from_string(item.at("value_kind").get<std::string>());
      if (item.contains("bins")) entry.bins = item.at("bins").get<int>();
      if (entry.bins < 0) throw InputError(where + ": bins must be non-negative");
      if (!entry.variables.empty()) {
        for (const auto& t : entry.intervention_targets) {
          if (std::find(entry.variables.begin(), entry.variables.end(), t) == entry.variables.end()) {
            throw InputError(where + ": target '" + t + "' is not among its variables");
          }
        }
      }
      out.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), path.parent_path());
}

std::string manifest_to_json(const std::vector<ManifestEntry>& entries, int indent) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json item;
    if (!e.csv_path.empty()) {
      item["csv_path"] = e.csv_path.generic_string();
    } else {
      item["variables"] = e.variables;
    }
    item["intervention_targets"] = e.intervention_targets;
    item["value_kind"] = to_string(e.value_kind);
    if (e.bins > 0) item["bins"] = e.bins;
    out.push_back(std::move(item));
  }
  return out.dump(indent);
}

Dataset load_dataset(const ManifestEntry& entry) {
  if (entry.csv_path.empty()) throw InputError("manifest entry has no csv_path");
  Dataset data = read_csv(entry.csv_path);
  data.intervention_targets = entry.intervention_targets;
  if (entry.value_kind == ValueKind::Discrete || entry.bins > 0) make_discrete(data, entry.bins);
  data.validate();
  return data;
}

}  // namespace mosaic
