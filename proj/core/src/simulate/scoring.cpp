#include "mosaic/simulate/scoring.hpp"

#include <algorithm>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

std::optional<double> ratio(int num, int den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / den;
}

}  // namespace

QualityReport score_summary(const SummaryGraph& h, const MixedGraph& truth) {
  if (h.names.size() != truth.size()) throw InputError("summary and truth have different node counts");
  std::vector<NodeId> to_truth;
  for (const auto& name : h.names) {
    if (!truth.has_node(name)) throw InputError("node '" + name + "' missing from the truth graph");
    to_truth.push_back(truth.id(name));
  }
  QualityReport r;
  r.truth_edges = static_cast<int>(truth.edge_count());
  r.truth_endpoints = 2 * r.truth_edges;
  for (const auto& e : h.edges) {
    const NodeId a = to_truth[e.a], b = to_truth[e.b];
    const bool in_truth = truth.adjacent(a, b);
    ++r.output_edges;
    r.output_endpoints += 2;
    if (e.status == EdgeStatus::Solid) {
      ++r.solid_edges;
      if (in_truth) ++r.solid_edges_in_truth;
    } else {
      ++r.dashed_edges;
    }
    const std::pair<MarkSet, MarkSet> ends[] = {{e.at_a, truth.mark(b, a)},
                                                {e.at_b, truth.mark(a, b)}};
    for (const auto& [mine, theirs] : ends) {
      if (mine == kCircle) {
        ++r.circled_endpoints;
        continue;
      }
      ++r.orientations;
      if (mine == theirs) ++r.correct_orientations;
    }
  }
  r.s_precision = ratio(r.solid_edges_in_truth, r.solid_edges);
  r.s_recall = ratio(r.solid_edges_in_truth, r.truth_edges);
  r.o_precision = ratio(r.correct_orientations, r.orientations);
  r.o_recall = ratio(r.correct_orientations, r.truth_endpoints);
  r.dashed_edge_fraction = ratio(r.dashed_edges, r.output_edges);
  r.dashed_endpoint_fraction = ratio(r.circled_endpoints, r.output_endpoints);
  return r;
}

std::optional<double> median(std::vector<std::optional<double>> values) {
  std::vector<double> v;
  for (const auto& x : values) {
    if (x) v.push_back(*x);
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace mosaic
