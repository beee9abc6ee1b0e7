#pragma once

#include <optional>
#include <vector>

#include "mosaic/graph/mixed_graph.hpp"
#include "mosaic/pipeline/summary.hpp"

namespace mosaic {

/// Ratios are nullopt when their denominator is zero.
struct QualityReport {
  std::optional<double> s_precision;
  std::optional<double> s_recall;
  std::optional<double> o_precision;
  std::optional<double> o_recall;
  std::optional<double> dashed_edge_fraction;
  std::optional<double> dashed_endpoint_fraction;

  int solid_edges = 0;
  int solid_edges_in_truth = 0;
  int truth_edges = 0;
  int orientations = 0;
  int correct_orientations = 0;
  int truth_endpoints = 0;
  int dashed_edges = 0;
  int output_edges = 0;
  int circled_endpoints = 0;
  int output_endpoints = 0;
};

/// Compares solid features of `h` with the SMCM `truth` over the same node names
/// (any order). Orientations are the non-circled endpoints of h's non-absent
/// edges; an orientation is correct when truth has the edge with the same
/// mark set at that endpoint. Throws InputError on node mismatch.
QualityReport score_summary(const SummaryGraph& h, const MixedGraph& truth);

/// Median of the defined values, nullopt when there are none.
std::optional<double> median(std::vector<std::optional<double>> values);

}  // namespace mosaic
