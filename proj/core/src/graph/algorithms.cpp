#include "mosaic/graph/algorithms.hpp"

#include <deque>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

void require_node(const MixedGraph& g, NodeId x) {
  if (x < 0 || static_cast<std::size_t>(x) >= g.size()) {
    throw InputError("unknown node id " + std::to_string(x));
  }
}

// Directed successor lists; circle-marked edges never count as directed.
std::vector<std::vector<NodeId>> children_lists(const MixedGraph& g) {
  const auto n = static_cast<NodeId>(g.size());
  std::vector<std::vector<NodeId>> out(n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (g.has_directed(a, b)) out[a].push_back(b);
    }
  }
  return out;
}

}  // namespace

NodeSet ancestors(const MixedGraph& g, const NodeSet& xs) {
  const auto n = static_cast<NodeId>(g.size());
  NodeSet seen(g.size());
  std::vector<NodeId> stack;
  for (NodeId x : xs.members()) {
    require_node(g, x);
    seen.insert(x);
    stack.push_back(x);
  }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p = 0; p < n; ++p) {
      if (!seen.contains(p) && g.has_directed(p, v)) {
        seen.insert(p);
        stack.push_back(p);
      }
    }
  }
  return seen;
}

NodeSet ancestors(const MixedGraph& g, NodeId x) {
  require_node(g, x);
  return ancestors(g, NodeSet(g.size(), {x}));
}

bool is_ancestor(const MixedGraph& g, NodeId a, NodeId b) {
  require_node(g, a);
  return ancestors(g, b).contains(a);
}

bool has_directed_cycle(const MixedGraph& g) {
  const auto kids = children_lists(g);
  const auto n = static_cast<NodeId>(g.size());
  std::vector<int> indegree(n, 0);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : kids[a]) ++indegree[b];
  }
  std::vector<NodeId> ready;
  for (NodeId a = 0; a < n; ++a) {
    if (indegree[a] == 0) ready.push_back(a);
  }
  NodeId removed = 0;
  while (!ready.empty()) {
    NodeId a = ready.back();
    ready.pop_back();
    ++removed;
    for (NodeId b : kids[a]) {
      if (--indegree[b] == 0) ready.push_back(b);
    }
  }
  return removed != n;
}

bool m_separated(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& z) {
  require_node(g, x);
  require_node(g, y);
  if (x == y) throw InputError("m-separation query needs two distinct nodes");
  if (z.contains(x) || z.contains(y)) {
    throw InputError("m-separation query endpoints must lie outside the conditioning set");
  }
  for (NodeId v : z.members()) require_node(g, v);

  const auto n = static_cast<NodeId>(g.size());
  const NodeSet anc_z = ancestors(g, z);
  // state = 2 * node + (arrived through an arrowhead at node)
  std::vector<bool> visited(2 * static_cast<std::size_t>(n), false);
  std::deque<int> queue;

  const auto push = [&](NodeId v, bool arrow_in) {
    int s = 2 * v + (arrow_in ? 1 : 0);
    if (!visited[s]) {
      visited[s] = true;
      queue.push_back(s);
    }
  };

  for (NodeId w = 0; w < n; ++w) {
    for (const auto& c : g.components(x, w)) push(w, c.at_b == kArrow);
  }
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const NodeId v = s / 2;
    const bool arrow_in = s % 2 == 1;
    if (v == y) return false;
    for (NodeId w = 0; w < n; ++w) {
      for (const auto& c : g.components(v, w)) {
        const bool collider = arrow_in && c.at_a == kArrow;
        if (collider ? !anc_z.contains(v) : z.contains(v)) continue;
        push(w, c.at_b == kArrow);
      }
    }
  }
  return true;
}

namespace {

struct InducingSearch {
  const MixedGraph& g;
  NodeId target;
  const NodeSet& latent;
  const NodeSet& anc_xy;
  int max_len;
  std::vector<bool> on_path;

  // `v` was reached with an arrowhead at v iff arrow_in; `len` edges used so far.
  bool extend(NodeId v, bool arrow_in, int len) {
    if (len >= max_len) return false;
    const auto n = static_cast<NodeId>(g.size());
    for (NodeId w = 0; w < n; ++w) {
      if (on_path[w]) continue;
      const auto comps = g.components(v, w);
      bool into_w[2] = {false, false};
      for (const auto& c : comps) {
        const bool collider = arrow_in && c.at_a == kArrow;
        if (collider ? !anc_xy.contains(v) : !latent.contains(v)) continue;
        into_w[c.at_b == kArrow ? 1 : 0] = true;
      }
      for (int arrow = 0; arrow < 2; ++arrow) {
        if (!into_w[arrow]) continue;
        if (w == target) return true;
        on_path[w] = true;
        const bool found = extend(w, arrow == 1, len + 1);
        on_path[w] = false;
        if (found) return true;
      }
    }
    return false;
  }
};

}  // namespace

bool has_inducing_path(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& latent,
                       std::optional<int> max_len) {
  require_node(g, x);
  require_node(g, y);
  if (x == y) throw InputError("inducing path query needs two distinct nodes");
  if (latent.contains(x) || latent.contains(y)) {
    throw InputError("inducing path endpoints must not be latent");
  }
  if (g.adjacent(x, y)) return !max_len || *max_len >= 1;
  const NodeSet anc_xy = ancestors(g, NodeSet(g.size(), {x, y}));
  InducingSearch search{g, y, latent, anc_xy,
                        max_len ? *max_len : static_cast<int>(g.size()),
                        std::vector<bool>(g.size(), false)};
  search.on_path[x] = true;
  // The first step leaves x; x is an endpoint so its own mark never matters.
  const auto n = static_cast<NodeId>(g.size());
  for (NodeId w = 0; w < n; ++w) {
    if (w == y) continue;
    bool into_w[2] = {false, false};
    for (const auto& c : g.components(x, w)) into_w[c.at_b == kArrow ? 1 : 0] = true;
    for (int arrow = 0; arrow < 2; ++arrow) {
      if (!into_w[arrow]) continue;
      search.on_path[w] = true;
      const bool found = search.extend(w, arrow == 1, 1);
      search.on_path[w] = false;
      if (found) return true;
    }
  }
  return false;
}

MixedGraph manipulate(const MixedGraph& s, const NodeSet& targets) {
  if (s.kind() != GraphKind::Smcm && s.kind() != GraphKind::Dag) {
    throw InputError("manipulation is defined for DAG and SMCM graphs only");
  }
  MixedGraph out = s;
  const auto n = static_cast<NodeId>(s.size());
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!s.adjacent(a, b)) continue;
      MarkSet at_a = 0;
      MarkSet at_b = 0;
      for (const auto& c : s.components(a, b)) {
        if ((c.at_a == kArrow && targets.contains(a)) || (c.at_b == kArrow && targets.contains(b))) {
          continue;
        }
        at_a |= c.at_a;
        at_b |= c.at_b;
      }
      out.set_edge(a, b, at_a, at_b);
    }
  }
  return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep) {
  std::vector<NodeId> ids = keep.members();
  std::vector<std::string> names;
  for (NodeId v : ids) names.push_back(g.name(v));
  MixedGraph out(names, g.kind());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (g.adjacent(ids[i], ids[j])) {
        out.set_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), g.mark(ids[j], ids[i]),
                     g.mark(ids[i], ids[j]));
      }
    }
  }
  return out;
}

MixedGraph mag_of(const MixedGraph& g, const NodeSet& latent) {
  if (g.kind() == GraphKind::Pag || g.kind() == GraphKind::Search) {
    throw InputError("cannot build a MAG from a graph with circle marks");
  }
  if (has_directed_cycle(g)) throw InputError("graph has a directed cycle");
  std::vector<NodeId> kept;
  std::vector<std::string> names;
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    if (!latent.contains(v)) {
      kept.push_back(v);
      names.push_back(g.name(v));
    }
  }
  std::vector<NodeSet> anc;
  anc.reserve(g.size());
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) anc.push_back(ancestors(g, v));

  MixedGraph out(names, GraphKind::Mag);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      const NodeId a = kept[i];
      const NodeId b = kept[j];
      if (!has_inducing_path(g, a, b, latent)) continue;
      const auto ia = static_cast<NodeId>(i);
      const auto jb = static_cast<NodeId>(j);
      if (anc[b].contains(a)) {
        out.set_edge(ia, jb, kTail, kArrow);
      } else if (anc[a].contains(b)) {
        out.set_edge(ia, jb, kArrow, kTail);
      } else {
        out.set_edge(ia, jb, kArrow, kArrow);
      }
    }
  }
  return out;
}

MixedGraph smcm_to_mag(const MixedGraph& s) {
  if (s.kind() != GraphKind::Smcm && s.kind() != GraphKind::Dag) {
    throw InputError("smcm_to_mag expects an SMCM");
  }
  return mag_of(s, NodeSet(s.size()));
}

MixedGraph marginalize_mag(const MixedGraph& m, const NodeSet& latent) {
  if (m.kind() != GraphKind::Mag && m.kind() != GraphKind::Dag) {
    throw InputError("marginalize_mag expects a MAG");
  }
  return mag_of(m, latent);
}

MixedGraph latent_projection(const MixedGraph& g, const NodeSet& latent) {
  if (g.kind() != GraphKind::Smcm && g.kind() != GraphKind::Dag) {
    throw InputError("latent projection expects a DAG or SMCM");
  }
  const auto n = static_cast<NodeId>(g.size());
  // reach[v]: latent nodes with a directed path into v whose interior is latent.
  std::vector<NodeSet> reach(n, NodeSet(g.size()));
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> stack{v};
    NodeSet seen(g.size(), {v});
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId p = 0; p < n; ++p) {
        if (latent.contains(p) && !seen.contains(p) && g.has_directed(p, u)) {
          seen.insert(p);
          reach[v].insert(p);
          stack.push_back(p);
        }
      }
    }
  }
  std::vector<NodeId> kept;
  std::vector<std::string> names;
  for (NodeId v = 0; v < n; ++v) {
    if (!latent.contains(v)) {
      kept.push_back(v);
      names.push_back(g.name(v));
    }
  }
  MixedGraph out(names, GraphKind::Smcm);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (i == j) continue;
      const NodeId a = kept[i];
      const NodeId b = kept[j];
      bool directed = g.has_directed(a, b);
      for (NodeId l : reach[b].members()) {
        if (g.has_directed(a, l)) directed = true;
      }
      if (directed) out.add_directed(static_cast<NodeId>(i), static_cast<NodeId>(j));
      if (i > j) continue;
      NodeSet src_a = reach[a];
      src_a.insert(a);
      NodeSet src_b = reach[b];
      src_b.insert(b);
      bool confounded = false;
      for (NodeId l : reach[a].members()) {
        if (reach[b].contains(l)) confounded = true;
      }
      for (NodeId u : src_a.members()) {
        for (NodeId w : src_b.members()) {
          if (u != w && g.has_bidirected(u, w)) confounded = true;
        }
      }
      if (confounded) out.add_bidirected(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return out;
}

}  // namespace mosaic
