#include "mosaic/encode/search_graph.hpp"

#include <unordered_map>

#include "mosaic/errors.hpp"

namespace mosaic {

MixedGraph initialize_search_graph(const std::vector<FciResult>& results,
                                   const std::vector<std::vector<std::string>>& targets) {
  if (results.size() != targets.size()) {
    throw InputError("need one target list per PAG");
  }
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
  for (const auto& r : results) {
    for (const auto& name : r.pag.names()) {
      if (index.emplace(name, static_cast<NodeId>(names.size())).second) names.push_back(name);
    }
  }
  const std::size_t n = names.size();
  MixedGraph h(names, GraphKind::Search);

  // per ordered pair (from, at): PAGs containing the edge, and how many put an arrow at `at`
  std::vector<int> containing(n * n, 0);
  std::vector<int> arrows(n * n, 0);
  std::vector<bool> together_free(n * n, false);
  std::vector<bool> manipulated_only(n * n, false);  // [x * n + y]: x manipulated, y not, both observed

  for (std::size_t i = 0; i < results.size(); ++i) {
    const MixedGraph& pag = results[i].pag;
    std::vector<NodeId> global;
    for (const auto& name : pag.names()) global.push_back(index.at(name));
    std::vector<bool> manip(pag.size(), false);
    for (const auto& t : targets[i]) {
      if (!pag.has_node(t)) throw InputError("target '" + t + "' is not observed in dataset " + std::to_string(i));
      manip[pag.id(t)] = true;
    }
    for (NodeId a = 0; a < static_cast<NodeId>(pag.size()); ++a) {
      for (NodeId b = 0; b < static_cast<NodeId>(pag.size()); ++b) {
        if (a == b) continue;
        const std::size_t k = global[a] * n + global[b];
        if (!manip[a] && !manip[b]) together_free[k] = true;
        if (manip[a] && !manip[b]) manipulated_only[k] = true;
        if (!pag.adjacent(a, b)) continue;
        ++containing[k];
        if (pag.mark(a, b) == kArrow) ++arrows[k];
      }
    }
  }

  for (NodeId a = 0; a < static_cast<NodeId>(n); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(n); ++b) {
      const std::size_t ab = a * n + b;
      const std::size_t ba = b * n + a;
      if (containing[ab] > 0) {
        const MarkSet at_b = arrows[ab] == containing[ab] ? kArrow : kCircle;
        const MarkSet at_a = arrows[ba] == containing[ba] ? kArrow : kCircle;
        h.set_edge(a, b, at_a, at_b);
      } else if (!together_free[ab]) {
        const MarkSet at_a = manipulated_only[ab] ? kArrow : kCircle;
        const MarkSet at_b = manipulated_only[ba] ? kArrow : kCircle;
        h.set_edge(a, b, at_a, at_b);
      }
    }
  }
  return h;
}

namespace {

class PathWalker {
 public:
  PathWalker(const MixedGraph& h, NodeId x, NodeId y, const PathQuery& q)
      : h_(h), x_(x), y_(y), q_(q), on_path_(h.size(), false) {}

  std::vector<std::vector<NodeId>> run() {
    path_.push_back(x_);
    on_path_[x_] = true;
    extend();
    return std::move(out_);
  }

 private:
  bool manipulated(NodeId v) const { return q_.targets.contains(v); }

  bool step_allowed(NodeId from, NodeId to) const {
    if (q_.mode == PathMode::Ancestral) {
      return !manipulated(to) && !fixed_arrow(h_, to, from);
    }
    if (to == y_) {
      if (manipulated(y_) && fixed_arrow(h_, from, y_)) return false;
      // a single edge between two manipulated nodes cannot survive surgery
      if (from == x_ && manipulated(x_) && manipulated(y_)) return false;
      return true;
    }
    return !manipulated(to);
  }

  void extend() {
    const NodeId cur = path_.back();
    const int edges = static_cast<int>(path_.size());  // edges after the next step
    if (q_.max_edges && edges > *q_.max_edges) return;
    for (NodeId next : h_.neighbors(cur)) {
      if (on_path_[next] || !step_allowed(cur, next)) continue;
      if (next == y_) {
        path_.push_back(next);
        out_.push_back(path_);
        path_.pop_back();
        continue;
      }
      path_.push_back(next);
      on_path_[next] = true;
      extend();
      on_path_[next] = false;
      path_.pop_back();
    }
  }

  const MixedGraph& h_;
  NodeId x_;
  NodeId y_;
  const PathQuery& q_;
  std::vector<bool> on_path_;
  std::vector<NodeId> path_;
  std::vector<std::vector<NodeId>> out_;
};

}  // namespace

std::vector<std::vector<NodeId>> enumerate_possible_paths(const MixedGraph& h, NodeId x, NodeId y,
                                                          const PathQuery& query) {
  if (x == y) throw InputError("path endpoints must differ");
  if (query.max_edges && *query.max_edges < 1) throw InputError("path length bound must be at least 1");
  PathWalker walker(h, x, y, query);
  auto paths = walker.run();
  if (query.mode == PathMode::Inducing && query.targets.contains(x)) {
    // the first edge must leave a manipulated x through a tail
    std::erase_if(paths, [&](const std::vector<NodeId>& p) { return fixed_arrow(h, p[1], x); });
  }
  return paths;
}

}  // namespace mosaic
