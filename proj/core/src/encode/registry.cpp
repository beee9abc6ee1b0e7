#include "mosaic/encode/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::True: return "true";
    case AtomKind::Edge: return "edge";
    case AtomKind::Arrow: return "arrow";
    case AtomKind::Tail: return "tail";
    case AtomKind::Adjacent: return "adjacent";
    case AtomKind::Collider: return "collider";
    case AtomKind::NonCollider: return "dnc";
    case AtomKind::Inducing: return "inducing";
    case AtomKind::Ancestral: return "ancestral";
    case AtomKind::Ancestor: return "ancestor";
    case AtomKind::Unblocked: return "unblocked";
    case AtomKind::And: return "and";
    case AtomKind::Or: return "or";
  }
  return "atom";
}

int VarRegistry::add(Atom atom) {
  atoms_.push_back(std::move(atom));
  return size();
}

int VarRegistry::find_core(AtomKind kind, NodeId a, NodeId b) const {
  auto it = core_.find({kind, a, b});
  return it == core_.end() ? 0 : it->second;
}

int VarRegistry::core(AtomKind kind, NodeId a, NodeId b) {
  if (a == b) throw InputError("core atoms need two distinct nodes");
  const auto key = std::make_tuple(kind, a, b);
  auto it = core_.find(key);
  if (it != core_.end()) return it->second;
  const int var = add({kind, {a, b}, -1});
  core_.emplace(key, var);
  return var;
}

int VarRegistry::find_edge(NodeId a, NodeId b) const { return find_core(AtomKind::Edge, std::min(a, b), std::max(a, b)); }
int VarRegistry::find_arrow(NodeId from, NodeId at) const { return find_core(AtomKind::Arrow, from, at); }
int VarRegistry::find_tail(NodeId from, NodeId at) const { return find_core(AtomKind::Tail, from, at); }

int VarRegistry::edge(NodeId a, NodeId b) { return core(AtomKind::Edge, std::min(a, b), std::max(a, b)); }
int VarRegistry::arrow(NodeId from, NodeId at) { return core(AtomKind::Arrow, from, at); }
int VarRegistry::tail(NodeId from, NodeId at) { return core(AtomKind::Tail, from, at); }

std::vector<int> VarRegistry::core_vars() const {
  std::vector<int> out;
  for (const auto& [key, var] : core_) out.push_back(var);
  std::sort(out.begin(), out.end());
  return out;
}

std::string VarRegistry::describe(int var) const {
  const Atom& a = atom(var);
  std::string out = to_string(a.kind);
  if (a.kind == AtomKind::True) return out;
  out += '(';
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (i) out += ',';
    const NodeId n = a.nodes[i];
    out += n >= 0 && static_cast<std::size_t>(n) < names_.size() ? names_[n] : std::to_string(n);
  }
  if (a.context >= 0) {
    out += a.nodes.empty() ? "" : ";";
    out += (a.kind == AtomKind::Ancestor || a.kind == AtomKind::Ancestral ? "m" : "d") +
           std::to_string(a.context);
  }
  out += ')';
  return out;
}

GateBuilder::GateBuilder(Cnf& cnf, VarRegistry& registry) : cnf_(cnf), registry_(registry) {
  true_ = fresh({AtomKind::True, {}, -1});
  cnf_.add({true_});
}

int GateBuilder::fresh(Atom atom) {
  const int var = registry_.add(std::move(atom));
  while (cnf_.num_vars < var) cnf_.new_var();
  return var;
}

Lit GateBuilder::build(bool conjunction, std::vector<Lit> inputs, Atom label) {
  // An OR gate is the dual of an AND gate over negated inputs.
  const Lit absorbing = conjunction ? bottom() : top();
  const Lit neutral = -absorbing;
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  std::vector<Lit> kept;
  for (Lit l : inputs) {
    if (l == absorbing) return absorbing;
    if (l == neutral) continue;
    if (std::binary_search(inputs.begin(), inputs.end(), -l)) return absorbing;
    kept.push_back(l);
  }
  if (kept.empty()) return neutral;
  if (kept.size() == 1) return kept.front();
  auto key = std::make_pair(conjunction, kept);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const int g = fresh(std::move(label));
  if (conjunction) {
    Clause back{g};
    for (Lit l : kept) {
      cnf_.add({-g, l});
      back.push_back(-l);
    }
    cnf_.add(std::move(back));
  } else {
    Clause forward{-g};
    for (Lit l : kept) {
      cnf_.add({g, -l});
      forward.push_back(l);
    }
    cnf_.add(std::move(forward));
  }
  cache_.emplace(std::move(key), g);
  return g;
}

Lit GateBuilder::make_and(std::vector<Lit> inputs, Atom label) { return build(true, std::move(inputs), std::move(label)); }
Lit GateBuilder::make_or(std::vector<Lit> inputs, Atom label) { return build(false, std::move(inputs), std::move(label)); }

void GateBuilder::imply_all(Lit v, const std::vector<Lit>& consequents) {
  for (Lit l : consequents) {
    if (is_true(l)) continue;
    if (is_false(l)) {
      cnf_.add({-v});
      continue;
    }
    cnf_.add({-v, l});
  }
}

void GateBuilder::define_equal(Lit v, Lit l) {
  if (is_true(l)) {
    cnf_.add({v});
  } else if (is_false(l)) {
    cnf_.add({-v});
  } else {
    cnf_.add({-v, l});
    cnf_.add({v, -l});
  }
}

}  // namespace mosaic
