#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mosaic {

using NodeId = int;

/// Endpoint marks. An endpoint of an SMCM edge pair may carry both kArrow and
/// kTail at once (a directed edge plus a bidirected edge between the same
/// nodes); kCircle is only used by PAGs and search graphs.
enum Mark : std::uint8_t {
  kNoMark = 0,
  kArrow = 1,
  kTail = 2,
  kCircle = 4,
};

using MarkSet = std::uint8_t;

enum class GraphKind { Dag, Smcm, Mag, Pag, Search };

const char* to_string(GraphKind kind);
GraphKind graph_kind_from_string(std::string_view text);

/// One simple edge between two nodes, seen from the pair (a, b).
struct EdgeComponent {
  Mark at_a;
  Mark at_b;
};

/// An unordered adjacency with the full mark sets at both ends.
struct EdgeRecord {
  NodeId a;
  NodeId b;
  MarkSet at_a;
  MarkSet at_b;
};

/// Bitmask over node ids; graphs in this library are small enough that
/// 64 nodes is a hard ceiling for the fast paths that use it.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe, false) {}
  NodeSet(std::size_t universe, std::initializer_list<NodeId> ids);

  std::size_t universe() const { return bits_.size(); }
  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < bits_.size() && bits_[id];
  }
  void insert(NodeId id);
  void erase(NodeId id);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<NodeId> members() const;

  NodeSet& operator|=(const NodeSet& other);
  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Node list plus a mark set for every ordered pair. `mark(a, b)` is the mark
/// set found at b's end of the edge(s) joining a and b. Adjacency is derived:
/// a and b are adjacent iff both ends carry a mark.
class MixedGraph {
 public:
  MixedGraph() = default;
  MixedGraph(std::vector<std::string> names, GraphKind kind);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId id) const { return names_.at(id); }
  GraphKind kind() const { return kind_; }
  void set_kind(GraphKind kind) { kind_ = kind; }

  /// Throws InputError for unknown names.
  NodeId id(std::string_view name) const;
  bool has_node(std::string_view name) const;
  NodeSet node_set(const std::vector<std::string>& names) const;

  MarkSet mark(NodeId from, NodeId at) const { return marks_[index(from, at)]; }
  bool adjacent(NodeId a, NodeId b) const {
    return a != b && marks_[index(a, b)] != kNoMark && marks_[index(b, a)] != kNoMark;
  }

  /// Replaces whatever joins a and b.
  void set_edge(NodeId a, NodeId b, MarkSet at_a, MarkSet at_b);
  void remove_edge(NodeId a, NodeId b) { set_edge(a, b, kNoMark, kNoMark); }
  /// Overwrites the mark at `at` without touching the other end.
  void set_mark(NodeId from, NodeId at, MarkSet mark) { marks_[index(from, at)] = mark; }

  /// Adds a directed component a -> b, keeping any bidirected component.
  void add_directed(NodeId a, NodeId b);
  /// Adds a bidirected component, keeping any directed component.
  void add_bidirected(NodeId a, NodeId b);

  bool has_directed(NodeId a, NodeId b) const;
  bool has_bidirected(NodeId a, NodeId b) const;

  /// Simple edges between a and b. An SMCM double edge yields two entries.
  /// PAG and search graph edges yield their single (possibly circled) edge.
  std::vector<EdgeComponent> components(NodeId a, NodeId b) const;

  std::vector<NodeId> neighbors(NodeId a) const;
  std::vector<NodeId> parents(NodeId a) const;
  std::vector<EdgeRecord> edges() const;
  std::size_t edge_count() const;

  /// Checks the invariants implied by kind(); throws InputError.
  void validate() const;

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

 private:
  std::size_t index(NodeId from, NodeId at) const {
    return static_cast<std::size_t>(from) * names_.size() + static_cast<std::size_t>(at);
  }
  void check(NodeId id) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<MarkSet> marks_;
  GraphKind kind_ = GraphKind::Smcm;
};

std::string mark_to_string(MarkSet mark);
MarkSet mark_from_string(std::string_view text);

}  // namespace mosaic
