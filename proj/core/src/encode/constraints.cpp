#include "mosaic/encode/constraints.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::Adjacency: return "adjacency";
    case LiteralKind::NonAdjacency: return "non-adjacency";
    case LiteralKind::Collider: return "collider";
    case LiteralKind::NonCollider: return "dnc";
  }
  return "adjacency";
}

namespace {

class Encoder {
 public:
  Encoder(const MixedGraph& h, const std::vector<FciResult>& results,
          const std::vector<std::vector<std::string>>& targets, const EncodeOptions& options)
      : h_(h), results_(results), opt_(options), n_(static_cast<NodeId>(h.size())) {
    if (results.size() != targets.size()) throw InputError("need one target list per PAG");
    prob_.search = h;
    prob_.registry = VarRegistry(h.names());
    prob_.targets = targets;
    gates_.emplace(prob_.cnf, prob_.registry);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const MixedGraph& pag = results[i].pag;
      std::vector<NodeId> ids;
      for (const auto& name : pag.names()) {
        if (!h.has_node(name)) throw InputError("node '" + name + "' of dataset " + std::to_string(i) + " missing from the search graph");
        ids.push_back(h.id(name));
      }
      NodeSet manip(h.size());
      for (const auto& t : targets[i]) {
        if (!pag.has_node(t)) throw InputError("target '" + t + "' is not observed in dataset " + std::to_string(i));
        manip.insert(h.id(t));
      }
      NodeSet latent(h.size());
      for (NodeId v = 0; v < n_; ++v) latent.insert(v);
      for (NodeId v : ids) latent.erase(v);
      local_.push_back(std::move(ids));
      manip_.push_back(manip);
      latent_.push_back(std::move(latent));
      manip_id_.push_back(manipulation_id(manip));
      prob_.observed.push_back(pag.names());
    }
  }

  CnfProblem run() {
    core_atoms();
    acyclicity();
    for (std::size_t i = 0; i < results_.size(); ++i) adjacency(static_cast<int>(i));
    for (std::size_t i = 0; i < results_.size(); ++i) {
      triples(static_cast<int>(i));
      discriminating(static_cast<int>(i));
    }
    return std::move(prob_);
  }

 private:
  GateBuilder& g() { return *gates_; }

  int manipulation_id(const NodeSet& s) {
    const auto members = s.members();
    auto it = manip_ids_.find(members);
    if (it != manip_ids_.end()) return it->second;
    const int id = static_cast<int>(manip_sets_.size());
    manip_ids_.emplace(members, id);
    manip_sets_.push_back(s);
    return id;
  }

  Lit edge(NodeId a, NodeId b) { return h_.adjacent(a, b) ? prob_.registry.edge(a, b) : g().bottom(); }
  Lit arrow(NodeId from, NodeId at) { return h_.adjacent(from, at) ? prob_.registry.arrow(from, at) : g().bottom(); }
  Lit tail(NodeId from, NodeId at) { return h_.adjacent(from, at) ? prob_.registry.tail(from, at) : g().bottom(); }

  void core_atoms() {
    for (const auto& e : h_.edges()) {
      const NodeId a = e.a, b = e.b;
      const Lit ed = edge(a, b);
      const Lit arrow_a = arrow(b, a), arrow_b = arrow(a, b);
      const Lit tail_a = tail(b, a), tail_b = tail(a, b);
      while (prob_.cnf.num_vars < prob_.registry.size()) prob_.cnf.new_var();
      auto& cnf = prob_.cnf;
      cnf.add({-tail_a, -tail_b});
      cnf.add({-ed, arrow_a, tail_a});
      cnf.add({-ed, arrow_b, tail_b});
      for (Lit m : {arrow_a, arrow_b, tail_a, tail_b}) cnf.add({-m, ed});
      if (fixed_arrow(h_, b, a)) cnf.add({-tail_a});
      if (fixed_arrow(h_, a, b)) cnf.add({-tail_b});
    }
  }

  void acyclicity() {
    const int none = manipulation_id(NodeSet(h_.size()));
    for (NodeId a = 0; a < n_; ++a) {
      for (NodeId b = a + 1; b < n_; ++b) {
        const Lit ab = ancestor(a, b, none);
        const Lit ba = ancestor(b, a, none);
        if (g().is_false(ab) || g().is_false(ba)) continue;
        prob_.cnf.add({-ab, -ba});
      }
    }
  }

  // a -> b surviving surgery on manipulation set `mid`
  Lit step(NodeId a, NodeId b, int mid) {
    if (!h_.adjacent(a, b) || manip_sets_[mid].contains(b) || fixed_arrow(h_, b, a)) return g().bottom();
    return g().make_and({tail(b, a), arrow(a, b)});
  }

  Lit ancestor(NodeId a, NodeId b, int mid) {
    if (a == b) return g().top();
    const auto key = std::make_tuple(a, b, mid);
    auto it = anc_.find(key);
    if (it != anc_.end()) return it->second;
    Lit out;
    if (opt_.exact_ancestry) {
      out = closure(mid)[a * n_ + b];
    } else {
      PathQuery q{PathMode::Ancestral, NodeSet(h_.size()), manip_sets_[mid], opt_.mpl};
      std::vector<Lit> options;
      for (const auto& path : enumerate_possible_paths(h_, a, b, q)) {
        std::vector<Lit> steps;
        for (std::size_t j = 1; j < path.size(); ++j) steps.push_back(step(path[j - 1], path[j], mid));
        options.push_back(g().make_and(std::move(steps), {AtomKind::Ancestral, path, mid}));
      }
      out = g().make_or(std::move(options), {AtomKind::Ancestor, {a, b}, mid});
    }
    anc_.emplace(key, out);
    return out;
  }

  // Reachability by repeated squaring of the one-step relation.
  const std::vector<Lit>& closure(int mid) {
    auto it = closures_.find(mid);
    if (it != closures_.end()) return it->second;
    const std::size_t n = h_.size();
    std::vector<Lit> r(n * n, g().bottom());
    for (NodeId a = 0; a < n_; ++a) {
      for (NodeId b = 0; b < n_; ++b) r[a * n + b] = a == b ? g().top() : step(a, b, mid);
    }
    for (std::size_t span = 1; span < n; span *= 2) {
      std::vector<Lit> next(n * n);
      for (NodeId a = 0; a < n_; ++a) {
        for (NodeId b = 0; b < n_; ++b) {
          if (a == b) {
            next[a * n + b] = g().top();
            continue;
          }
          std::vector<Lit> via{r[a * n + b]};
          for (NodeId c = 0; c < n_; ++c) {
            if (c == a || c == b) continue;
            via.push_back(g().make_and({r[a * n + c], r[c * n + b]}));
          }
          next[a * n + b] = g().make_or(std::move(via), {AtomKind::Ancestor, {a, b}, mid});
        }
      }
      r = std::move(next);
    }
    return closures_.emplace(mid, std::move(r)).first->second;
  }

  Lit unblocked(NodeId z, NodeId v, NodeId w, NodeId x, NodeId y, int i) {
    const int mid = manip_id_[i];
    const Lit reaches = g().make_or({ancestor(v, x, mid), ancestor(v, y, mid)});
    Lit passes;
    if (latent_[i].contains(v)) {
      passes = g().make_or({tail(z, v), tail(w, v), reaches});
    } else {
      passes = g().make_and({arrow(z, v), arrow(w, v), reaches});
    }
    return g().make_and({edge(z, v), edge(v, w), passes}, {AtomKind::Unblocked, {z, v, w, x, y}, i});
  }

  Lit inducing(const std::vector<NodeId>& path, int i) {
    const NodeId x = path.front(), y = path.back();
    const std::size_t k = path.size() - 1;
    std::vector<Lit> parts;
    if (manip_[i].contains(x)) parts.push_back(tail(path[1], x));
    if (manip_[i].contains(y)) parts.push_back(tail(path[k - 1], y));
    if (k == 1) {
      parts.push_back(edge(x, y));
    } else {
      for (std::size_t j = 1; j < k; ++j) parts.push_back(unblocked(path[j - 1], path[j], path[j + 1], x, y, i));
    }
    return g().make_and(std::move(parts), {AtomKind::Inducing, path, i});
  }

  void adjacency(int i) {
    const auto& ids = local_[i];
    const MixedGraph& pag = results_[i].pag;
    PathQuery q{PathMode::Inducing, latent_[i], manip_[i], opt_.mpl};
    for (NodeId a = 0; a < static_cast<NodeId>(ids.size()); ++a) {
      for (NodeId b = a + 1; b < static_cast<NodeId>(ids.size()); ++b) {
        const NodeId x = std::min(ids[a], ids[b]), y = std::max(ids[a], ids[b]);
        const int var = g().fresh({AtomKind::Adjacent, {x, y}, i});
        adjacent_[{i, x, y}] = var;
        std::vector<Lit> options;
        for (const auto& path : enumerate_possible_paths(h_, x, y, q)) options.push_back(inducing(path, i));
        g().define_equal(var, g().make_or(std::move(options)));

        const bool adj = pag.adjacent(a, b);
        auto mp = results_[i].max_p.find({a, b});
        SoftLiteral lit;
        lit.kind = adj ? LiteralKind::Adjacency : LiteralKind::NonAdjacency;
        lit.dataset = i;
        lit.nodes = {pag.name(a), pag.name(b)};
        lit.lit = adj ? var : -var;
        lit.p = mp != results_[i].max_p.end() ? mp->second : (adj ? 0.0 : 1.0);
        lit.pair = {pag.name(a), pag.name(b)};
        prob_.soft.push_back(std::move(lit));
      }
    }
  }

  Lit adj(int i, NodeId a, NodeId b) { return adjacent_.at({i, std::min(a, b), std::max(a, b)}); }
  Lit anc(int i, NodeId a, NodeId b) { return ancestor(a, b, manip_id_[i]); }

  double pair_p(int i, int a, int b) const {
    auto it = results_[i].max_p.find(std::minmax(a, b));
    return it == results_[i].max_p.end() ? 1.0 : it->second;
  }

  SoftLiteral feature(int i, bool collider, const std::vector<int>& local_nodes, const std::vector<Lit>& implied) {
    const MixedGraph& pag = results_[i].pag;
    std::vector<NodeId> nodes;
    std::vector<std::string> names;
    for (int v : local_nodes) {
      nodes.push_back(local_[i][v]);
      names.push_back(pag.name(v));
    }
    const int var = g().fresh({collider ? AtomKind::Collider : AtomKind::NonCollider, nodes, i});
    g().imply_all(var, implied);
    const int first = local_nodes.front(), last = local_nodes.back();
    SoftLiteral lit;
    lit.kind = collider ? LiteralKind::Collider : LiteralKind::NonCollider;
    lit.dataset = i;
    lit.nodes = std::move(names);
    lit.lit = var;
    lit.p = pair_p(i, first, last);
    lit.pair = {pag.name(std::min(first, last)), pag.name(std::max(first, last))};
    return lit;
  }

  void triples(int i) {
    for (const auto& t : results_[i].triples) {
      if (t.label == TripleLabel::Ambiguous) continue;
      const auto& ids = local_[i];
      const NodeId x = ids[t.x], m = ids[t.mid], y = ids[t.y];
      std::vector<Lit> implied{adj(i, x, m), adj(i, m, y), -adj(i, x, y)};
      const bool collider = t.label == TripleLabel::Collider;
      if (collider) {
        implied.push_back(-anc(i, m, x));
        implied.push_back(-anc(i, m, y));
      } else {
        implied.push_back(g().make_or({anc(i, m, x), anc(i, m, y)}));
      }
      prob_.soft.push_back(feature(i, collider, {t.x, t.mid, t.y}, implied));
    }
  }

  void discriminating(int i) {
    for (const auto& d : results_[i].discriminating) {
      std::vector<NodeId> v;
      for (int l : d.nodes) v.push_back(local_[i][l]);
      const std::size_t last = v.size() - 1;  // gamma
      const std::size_t beta = last - 1, alpha = last - 2;
      std::vector<Lit> implied;
      for (std::size_t k = 0; k < last; ++k) implied.push_back(adj(i, v[k], v[k + 1]));
      implied.push_back(-adj(i, v.front(), v[last]));
      for (std::size_t j = 1; j < beta; ++j) {
        implied.push_back(adj(i, v[j], v[last]));
        implied.push_back(anc(i, v[j], v[last]));
        implied.push_back(-anc(i, v[j], v[j - 1]));
        implied.push_back(-anc(i, v[j], v[j + 1]));
      }
      if (d.collider) {
        implied.push_back(-anc(i, v[beta], v[alpha]));
        implied.push_back(-anc(i, v[beta], v[last]));
      } else {
        implied.push_back(g().make_or({anc(i, v[beta], v[alpha]), anc(i, v[beta], v[last])}));
      }
      prob_.soft.push_back(feature(i, d.collider, d.nodes, implied));
    }
  }

  const MixedGraph& h_;
  const std::vector<FciResult>& results_;
  EncodeOptions opt_;
  NodeId n_;
  CnfProblem prob_;
  std::optional<GateBuilder> gates_;
  std::vector<std::vector<NodeId>> local_;
  std::vector<NodeSet> manip_;
  std::vector<NodeSet> latent_;
  std::vector<int> manip_id_;
  std::map<std::vector<NodeId>, int> manip_ids_;
  std::vector<NodeSet> manip_sets_;
  std::map<std::tuple<NodeId, NodeId, int>, Lit> anc_;
  std::map<int, std::vector<Lit>> closures_;
  std::map<std::tuple<int, NodeId, NodeId>, int> adjacent_;
};

}  // namespace

CnfProblem build_constraints(const MixedGraph& h, const std::vector<FciResult>& results,
                             const std::vector<std::vector<std::string>>& targets,
                             const EncodeOptions& options) {
  if (options.mpl && *options.mpl < 1) throw InputError("maximum path length must be at least 1");
  Encoder encoder(h, results, targets, options);
  return encoder.run();
}

}  // namespace mosaic
