#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mosaic/graph/mixed_graph.hpp"
#include "mosaic/solve/cnf.hpp"

namespace mosaic {

enum class AtomKind {
  True,
  Edge,         // nodes {a, b}, a < b
  Arrow,        // nodes {a, b}: arrowhead at b on the a-b edge
  Tail,         // nodes {a, b}: tail at b on the a-b edge
  Adjacent,     // nodes {x, y}, context dataset
  Collider,     // nodes = triple or discriminating path, context dataset
  NonCollider,
  Inducing,     // nodes = path, context dataset
  Ancestral,    // nodes = path, context manipulation set
  Ancestor,     // nodes {a, b}, context manipulation set
  Unblocked,    // nodes {z, v, w, x, y}, context dataset
  And,
  Or,
};

const char* to_string(AtomKind kind);

struct Atom {
  AtomKind kind;
  std::vector<NodeId> nodes;
  int context = -1;
};

/// Bijection between propositional variables and atoms. Core atoms (edge,
/// arrow, tail) are unique per pair; auxiliary atoms are appended as created.
class VarRegistry {
 public:
  VarRegistry() = default;
  explicit VarRegistry(std::vector<std::string> names) : names_(std::move(names)) {}

  int size() const { return static_cast<int>(atoms_.size()); }
  const Atom& atom(int var) const { return atoms_.at(static_cast<std::size_t>(var - 1)); }
  const std::vector<std::string>& names() const { return names_; }

  /// Existing core variable or 0.
  int find_edge(NodeId a, NodeId b) const;
  int find_arrow(NodeId from, NodeId at) const;
  int find_tail(NodeId from, NodeId at) const;

  int edge(NodeId a, NodeId b);
  int arrow(NodeId from, NodeId at);
  int tail(NodeId from, NodeId at);

  int add(Atom atom);

  std::vector<int> core_vars() const;
  std::string describe(int var) const;

 private:
  int core(AtomKind kind, NodeId a, NodeId b);
  int find_core(AtomKind kind, NodeId a, NodeId b) const;

  std::vector<std::string> names_;
  std::vector<Atom> atoms_;
  std::map<std::tuple<AtomKind, NodeId, NodeId>, int> core_;
};

/// Definitional (Tseitin) gate construction with constant folding and
/// structural hashing. Every gate variable g gets clauses for g <-> op(inputs).
class GateBuilder {
 public:
  GateBuilder(Cnf& cnf, VarRegistry& registry);

  Lit top() const { return true_; }
  Lit bottom() const { return -true_; }
  bool is_true(Lit l) const { return l == true_; }
  bool is_false(Lit l) const { return l == -true_; }

  /// Fresh variable for `atom`, kept in step with the CNF variable count.
  int fresh(Atom atom);

  Lit make_and(std::vector<Lit> inputs, Atom label);
  Lit make_or(std::vector<Lit> inputs, Atom label);
  Lit make_and(std::vector<Lit> inputs) { return make_and(std::move(inputs), {AtomKind::And, {}, -1}); }
  Lit make_or(std::vector<Lit> inputs) { return make_or(std::move(inputs), {AtomKind::Or, {}, -1}); }

  /// v -> l for every l (empty list: nothing).
  void imply_all(Lit v, const std::vector<Lit>& consequents);
  /// v <-> l
  void define_equal(Lit v, Lit l);

 private:
  Lit build(bool conjunction, std::vector<Lit> inputs, Atom label);

  Cnf& cnf_;
  VarRegistry& registry_;
  Lit true_ = 0;
  std::map<std::pair<bool, std::vector<Lit>>, Lit> cache_;
};

}  // namespace mosaic
