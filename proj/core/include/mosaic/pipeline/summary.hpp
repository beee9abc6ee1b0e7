#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/graph/mixed_graph.hpp"
#include "mosaic/solve/backbone.hpp"

namespace mosaic {

enum class EdgeStatus { Solid, Dashed, Absent };

const char* to_string(EdgeStatus status);
EdgeStatus edge_status_from_string(const std::string& text);

/// at_a / at_b hold kArrow, kTail, kArrow|kTail for invariant endpoints and
/// kCircle otherwise.
struct SummaryEdge {
  NodeId a;
  NodeId b;
  EdgeStatus status;
  MarkSet at_a;
  MarkSet at_b;

  friend bool operator==(const SummaryEdge&, const SummaryEdge&) = default;
};

/// Features shared by every SMCM consistent with the accepted constraints.
/// Only solid and dashed edges are stored (a < b); everything else is absent.
struct SummaryGraph {
  std::vector<std::string> names;
  std::vector<SummaryEdge> edges;

  const SummaryEdge* find(NodeId a, NodeId b) const;
  EdgeStatus status(NodeId a, NodeId b) const;
  /// Mark at `at` on the from-at edge; kNoMark when absent.
  MarkSet mark(NodeId from, NodeId at) const;
  NodeId id(const std::string& name) const;

  friend bool operator==(const SummaryGraph&, const SummaryGraph&) = default;
};

/// Endpoint mark from the polarities of its arrow and tail atoms.
MarkSet endpoint_mark(Polarity arrow, Polarity tail);

SummaryGraph summarize(const CnfProblem& problem, const BackboneReport& backbone);

std::string summary_to_json(const SummaryGraph& summary, int indent = 2);
SummaryGraph summary_from_json(const std::string& text);
/// Dashed edges use style=dashed, circled endpoints odot.
std::string summary_to_dot(const SummaryGraph& summary);

}  // namespace mosaic
