#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace mosaic::oracle {

std::vector<std::string> names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("V" + std::to_string(i));
  return out;
}

namespace {

// state 0 none, 1 a->b, 2 b->a, 3 a<->b, 4 a->b + a<->b, 5 b->a + a<->b
void apply_state(MixedGraph& g, NodeId a, NodeId b, int state) {
  switch (state) {
    case 0: break;
    case 1: g.set_edge(a, b, kTail, kArrow); break;
    case 2: g.set_edge(a, b, kArrow, kTail); break;
    case 3: g.set_edge(a, b, kArrow, kArrow); break;
    case 4: g.set_edge(a, b, kTail | kArrow, kArrow); break;
    case 5: g.set_edge(a, b, kArrow, kTail | kArrow); break;
  }
}

bool acyclic(const MixedGraph& g) {
  const auto anc = ancestor_matrix(g);
  // ancestor_matrix is reflexive; look for a strict cycle through a directed edge
  for (NodeId a = 0; a < static_cast<NodeId>(g.size()); ++a) {
    for (NodeId b = 0; b < static_cast<NodeId>(g.size()); ++b) {
      if (a == b) continue;
      const bool a_to_b = g.adjacent(a, b) && (g.mark(b, a) & kTail) && (g.mark(a, b) & kArrow);
      if (a_to_b && anc[b][a]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<MixedGraph> all_smcms(const std::vector<std::string>& node_names) {
  const int n = static_cast<int>(node_names.size());
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) pairs.push_back({a, b});
  }
  std::vector<int> state(pairs.size(), 0);
  std::vector<MixedGraph> out;
  while (true) {
    MixedGraph g(node_names, GraphKind::Smcm);
    for (std::size_t k = 0; k < pairs.size(); ++k) apply_state(g, pairs[k].first, pairs[k].second, state[k]);
    if (acyclic(g)) out.push_back(std::move(g));
    std::size_t k = 0;
    while (k < state.size() && ++state[k] == 6) state[k++] = 0;
    if (k == state.size()) break;
  }
  return out;
}

MixedGraph random_smcm(const std::vector<std::string>& node_names, std::mt19937_64& rng, double p_empty) {
  const int n = static_cast<int>(node_names.size());
  std::bernoulli_distribution empty(p_empty);
  std::uniform_int_distribution<int> kind(1, 5);
  while (true) {
    MixedGraph g(node_names, GraphKind::Smcm);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) apply_state(g, a, b, empty(rng) ? 0 : kind(rng));
    }
    if (acyclic(g)) return g;
  }
}

std::vector<std::vector<bool>> ancestor_matrix(const MixedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    r[a][a] = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && g.adjacent(a, b) && (g.mark(b, a) & kTail) && (g.mark(a, b) & kArrow)) r[a][b] = true;
    }
  }
  for (std::size_t span = 1; span < n; span *= 2) {
    auto next = r;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!r[a][c]) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (r[c][b]) next[a][b] = true;
        }
      }
    }
    r = std::move(next);
  }
  return r;
}

namespace {

// Enumerates simple paths from x to y with one component per edge; calls
// accept(path, arrow_in, arrow_out) where arrow_in[j] / arrow_out[j] tell
// whether the components before / after interior node j carry an arrow at it.
class PathLister {
 public:
  PathLister(const MixedGraph& g, NodeId x, NodeId y) : g_(g), x_(x), y_(y), on_(g.size(), false) {}

  template <typename F>
  bool any(F&& accept) {
    nodes_ = {x_};
    on_[x_] = true;
    return walk(accept);
  }

 private:
  template <typename F>
  bool walk(F& accept) {
    const NodeId cur = nodes_.back();
    for (NodeId next = 0; next < static_cast<NodeId>(g_.size()); ++next) {
      if (on_[next] || !g_.adjacent(cur, next)) continue;
      // arrow at cur / at next for each component of the cur-next edge
      std::vector<std::pair<bool, bool>> comps;
      const MarkSet at_cur = g_.mark(next, cur), at_next = g_.mark(cur, next);
      if ((at_cur & kTail) && (at_next & kArrow)) comps.push_back({false, true});
      if ((at_cur & kArrow) && (at_next & kTail)) comps.push_back({true, false});
      if ((at_cur & kArrow) && (at_next & kArrow)) comps.push_back({true, true});
      for (auto [arrow_cur, arrow_next] : comps) {
        nodes_.push_back(next);
        at_prev_end_.push_back(arrow_cur);
        at_next_end_.push_back(arrow_next);
        bool done = false;
        if (next == y_) {
          done = accept(nodes_, at_prev_end_, at_next_end_);
        } else {
          on_[next] = true;
          done = walk(accept);
          on_[next] = false;
        }
        nodes_.pop_back();
        at_prev_end_.pop_back();
        at_next_end_.pop_back();
        if (done) return true;
      }
    }
    return false;
  }

  const MixedGraph& g_;
  NodeId x_, y_;
  std::vector<bool> on_;
  std::vector<NodeId> nodes_;
  // edge k joins nodes_[k] and nodes_[k+1]
  std::vector<bool> at_prev_end_;  // arrow at nodes_[k]
  std::vector<bool> at_next_end_;  // arrow at nodes_[k+1]
};

}  // namespace

bool path_m_connected(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& z) {
  const auto anc = ancestor_matrix(g);
  const auto in_an_z = [&](NodeId v) {
    for (NodeId w : z.members()) {
      if (anc[v][w]) return true;
    }
    return false;
  };
  PathLister lister(g, x, y);
  return lister.any([&](const std::vector<NodeId>& p, const std::vector<bool>& head_first,
                        const std::vector<bool>& head_second) {
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      const bool collider = head_second[j - 1] && head_first[j];
      if (collider ? !in_an_z(p[j]) : z.contains(p[j])) return false;
    }
    return true;
  });
}

bool path_inducing(const MixedGraph& g, NodeId x, NodeId y, const NodeSet& latent) {
  const auto anc = ancestor_matrix(g);
  PathLister lister(g, x, y);
  return lister.any([&](const std::vector<NodeId>& p, const std::vector<bool>& head_first,
                        const std::vector<bool>& head_second) {
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      const bool collider = head_second[j - 1] && head_first[j];
      if (!collider && !latent.contains(p[j])) return false;
      if (collider && !anc[p[j]][x] && !anc[p[j]][y]) return false;
    }
    return true;
  });
}

MixedGraph surgery(const MixedGraph& g, const NodeSet& targets) {
  MixedGraph out(g.names(), g.kind());
  for (NodeId a = 0; a < static_cast<NodeId>(g.size()); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(g.size()); ++b) {
      if (!g.adjacent(a, b)) continue;
      const MarkSet at_a = g.mark(b, a), at_b = g.mark(a, b);
      MarkSet keep_a = 0, keep_b = 0;
      if ((at_a & kTail) && (at_b & kArrow) && !targets.contains(b)) keep_a |= kTail, keep_b |= kArrow;
      if ((at_a & kArrow) && (at_b & kTail) && !targets.contains(a)) keep_a |= kArrow, keep_b |= kTail;
      if ((at_a & kArrow) && (at_b & kArrow) && !targets.contains(a) && !targets.contains(b)) {
        keep_a |= kArrow, keep_b |= kArrow;
      }
      if (keep_a) out.set_edge(a, b, keep_a, keep_b);
    }
  }
  return out;
}

namespace {

template <typename F>
bool for_each_query(const MixedGraph& g, const std::vector<std::string>& observed, F&& fn) {
  std::vector<NodeId> ids;
  for (const auto& n : observed) ids.push_back(g.id(n));
  const std::size_t k = ids.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<NodeId> rest;
      for (std::size_t r = 0; r < k; ++r) {
        if (r != i && r != j) rest.push_back(ids[r]);
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
        NodeSet z(g.size());
        for (std::size_t r = 0; r < rest.size(); ++r) {
          if (mask >> r & 1) z.insert(rest[r]);
        }
        if (!fn(ids[i], ids[j], z)) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<bool> separation_table(const MixedGraph& g, const std::vector<std::string>& observed,
                                   const std::vector<std::string>& targets) {
  const MixedGraph m = surgery(g, g.node_set(targets));
  std::vector<bool> out;
  for_each_query(m, observed, [&](NodeId x, NodeId y, const NodeSet& z) {
    out.push_back(!path_m_connected(m, x, y, z));
    return true;
  });
  return out;
}

bool matches_table(const MixedGraph& g, const std::vector<std::string>& observed,
                   const std::vector<std::string>& targets, const std::vector<bool>& table) {
  const MixedGraph m = surgery(g, g.node_set(targets));
  std::size_t k = 0;
  return for_each_query(m, observed, [&](NodeId x, NodeId y, const NodeSet& z) {
    return table[k++] == !path_m_connected(m, x, y, z);
  });
}

FeatureClasses classify(const std::vector<MixedGraph>& graphs) {
  if (graphs.empty()) throw std::logic_error("no graphs to classify");
  FeatureClasses out;
  out.names = graphs.front().names();
  const NodeId n = static_cast<NodeId>(out.names.size());
  const auto fold = [](std::map<std::pair<NodeId, NodeId>, Polarity>& m, std::pair<NodeId, NodeId> key, bool v) {
    const Polarity p = v ? Polarity::ForcedTrue : Polarity::ForcedFalse;
    auto [it, inserted] = m.emplace(key, p);
    if (!inserted && it->second != p) it->second = Polarity::Free;
  };
  for (const auto& g : graphs) {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (a == b) continue;
        if (a < b) fold(out.edge, {a, b}, g.adjacent(a, b));
        fold(out.arrow, {a, b}, g.adjacent(a, b) && (g.mark(a, b) & kArrow));
        fold(out.tail, {a, b}, g.adjacent(a, b) && (g.mark(a, b) & kTail));
      }
    }
  }
  return out;
}

std::vector<MixedGraph> consistent_smcms(const MixedGraph& truth, const std::vector<Experiment>& experiments) {
  std::vector<std::vector<bool>> tables;
  for (const auto& e : experiments) tables.push_back(separation_table(truth, e.observed, e.targets));
  std::vector<MixedGraph> out;
  for (auto& g : all_smcms(truth.names())) {
    bool ok = true;
    for (std::size_t i = 0; i < experiments.size() && ok; ++i) {
      ok = matches_table(g, experiments[i].observed, experiments[i].targets, tables[i]);
    }
    if (ok) out.push_back(std::move(g));
  }
  return out;
}

namespace {

bool satisfies(const Cnf& cnf, const std::vector<bool>& value) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (Lit l : c) sat |= value[std::abs(l)] == (l > 0);
    if (!sat) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<bool>> all_models(const Cnf& cnf) {
  if (cnf.num_vars > 22) throw std::logic_error("too many variables to enumerate");
  std::vector<std::vector<bool>> out;
  std::vector<bool> value(cnf.num_vars + 1, false);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    for (int v = 1; v <= cnf.num_vars; ++v) value[v] = bits >> (v - 1) & 1;
    if (satisfies(cnf, value)) out.push_back(value);
  }
  return out;
}

bool satisfiable(const Cnf& cnf, const std::vector<Lit>& assumptions) {
  Cnf with = cnf;
  for (Lit l : assumptions) with.clauses.push_back({l});
  return !all_models(with).empty();
}

std::map<int, Polarity> backbone(const Cnf& cnf, const std::vector<Lit>& fixed, const std::vector<int>& candidates) {
  Cnf with = cnf;
  for (Lit l : fixed) with.clauses.push_back({l});
  const auto models = all_models(with);
  std::map<int, Polarity> out;
  for (int v : candidates) {
    bool seen_true = false, seen_false = false;
    for (const auto& m : models) (m[v] ? seen_true : seen_false) = true;
    out[v] = seen_true && seen_false ? Polarity::Free : seen_true ? Polarity::ForcedTrue : Polarity::ForcedFalse;
  }
  return out;
}

Cnf random_cnf(int vars, int clauses, int width, std::mt19937_64& rng) {
  Cnf cnf;
  cnf.num_vars = vars;
  std::uniform_int_distribution<int> var(1, vars);
  std::bernoulli_distribution sign(0.5);
  for (int c = 0; c < clauses; ++c) {
    Clause clause;
    for (int k = 0; k < width; ++k) clause.push_back(sign(rng) ? var(rng) : -var(rng));
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

}  // namespace mosaic::oracle
