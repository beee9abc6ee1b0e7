#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mosaic/fci/fci.hpp"
#include "mosaic/graph/mixed_graph.hpp"

namespace mosaic {

/// Union of the PAG skeletons over the union of their variables, all endpoints
/// circled except arrowheads shared by every PAG containing the edge. Pairs
/// never observed together with both unmanipulated get an extra o-o edge,
/// with an arrowhead at X when some dataset observed both with only X
/// manipulated. Node order is first appearance across the PAGs.
MixedGraph initialize_search_graph(const std::vector<FciResult>& results,
                                   const std::vector<std::vector<std::string>>& targets);

/// A fixed arrowhead at `at` on the from-at edge of a search graph.
inline bool fixed_arrow(const MixedGraph& h, NodeId from, NodeId at) {
  return h.adjacent(from, at) && h.mark(from, at) == kArrow;
}

enum class PathMode { Inducing, Ancestral };

struct PathQuery {
  PathMode mode = PathMode::Inducing;
  NodeSet latent;   // inducing mode only
  NodeSet targets;  // manipulated nodes of the experiment
  std::optional<int> max_edges;  // nullopt: unbounded
};

/// Simple paths from x to y in h that h's fixed marks do not already rule out.
/// Inducing mode: interior nodes outside `targets`; a manipulated endpoint
/// needs a tail, so a fixed arrowhead there prunes the path. Ancestral mode:
/// directed candidates x -> ... -> y, so every node after x lies outside
/// `targets` and no step leaves through a fixed arrowhead. Paths are listed in
/// depth-first order over ascending neighbour ids.
std::vector<std::vector<NodeId>> enumerate_possible_paths(const MixedGraph& h, NodeId x, NodeId y,
                                                          const PathQuery& query);

}  // namespace mosaic
