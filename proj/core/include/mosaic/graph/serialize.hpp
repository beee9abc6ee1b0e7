#pragma once

#include <string>
#include <string_view>

#include "mosaic/graph/mixed_graph.hpp"

namespace mosaic {

/// {"kind", "nodes": [...], "edges": [{"x", "y", "mark_at_x", "mark_at_y", "double"}]}.
/// A double edge is written as its directed component with "double": true.
std::string graph_to_json(const MixedGraph& g, int indent = 2);
MixedGraph graph_from_json(std::string_view text);

std::string graph_to_dot(const MixedGraph& g);

}  // namespace mosaic
