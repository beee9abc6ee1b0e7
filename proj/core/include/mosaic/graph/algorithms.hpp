#pragma once

#include <optional>
#include <vector>

#include "mosaic/graph/mixed_graph.hpp"

namespace mosaic {

/// True iff a directed path from `a` to `b` exists (a node is its own ancestor).
bool is_ancestor(const MixedGraph& g, NodeId a, NodeId b);
NodeSet ancestors(const MixedGraph& g, NodeId x);
NodeSet ancestors(const MixedGraph& g, const NodeSet& xs);
bool has_directed_cycle(const MixedGraph& g);

/// Reachability over (node, entered-through-arrowhead) states. Colliders pass
/// iff they are ancestors of Z, non-colliders iff they are outside Z.
bool m_separated(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& z);

/// `max_len` counts edges; nullopt means unbounded.
bool has_inducing_path(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& latent,
                       std::optional<int> max_len = std::nullopt);

/// Graph surgery: drops every edge component with an arrowhead at a node of `targets`.
MixedGraph manipulate(const MixedGraph& s, const NodeSet& targets);

MixedGraph smcm_to_mag(const MixedGraph& s);
MixedGraph marginalize_mag(const MixedGraph& m, const NodeSet& latent);

/// MAG over the nodes outside `latent`: adjacency by inducing path w.r.t.
/// `latent`, orientation by ancestry in `g`. Works for DAG, SMCM and MAG input.
MixedGraph mag_of(const MixedGraph& g, const NodeSet& latent);

/// SMCM over the nodes outside `latent` whose directed edges are latent-only
/// directed paths and whose bidirected edges are latent common causes.
MixedGraph latent_projection(const MixedGraph& g, const NodeSet& latent);

/// Copy restricted to `keep`, preserving node order.
MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep);

}  // namespace mosaic
