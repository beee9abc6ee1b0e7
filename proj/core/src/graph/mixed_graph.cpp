#include "mosaic/graph/mixed_graph.hpp"

#include <algorithm>

#include "mosaic/errors.hpp"
#include "mosaic/graph/algorithms.hpp"

namespace mosaic {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Input: return "input";
    case ErrorCategory::Degenerate: return "degenerate-input";
    case ErrorCategory::Precondition: return "precondition";
    case ErrorCategory::Internal: return "internal";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Input: return 2;
    case ErrorCategory::Degenerate: return 3;
    case ErrorCategory::Precondition: return 4;
    case ErrorCategory::Io: return 5;
    case ErrorCategory::Internal: return 70;
  }
  return 1;
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Dag: return "dag";
    case GraphKind::Smcm: return "smcm";
    case GraphKind::Mag: return "mag";
    case GraphKind::Pag: return "pag";
    case GraphKind::Search: return "search";
  }
  return "smcm";
}

GraphKind graph_kind_from_string(std::string_view text) {
  if (text == "dag") return GraphKind::Dag;
  if (text == "smcm") return GraphKind::Smcm;
  if (text == "mag") return GraphKind::Mag;
  if (text == "pag") return GraphKind::Pag;
  if (text == "search") return GraphKind::Search;
  throw InputError("unknown graph kind '" + std::string(text) + "'");
}

std::string mark_to_string(MarkSet mark) {
  switch (mark) {
    case kNoMark: return "none";
    case kArrow: return "arrow";
    case kTail: return "tail";
    case kCircle: return "circle";
    case kArrow | kTail: return "arrow+tail";
    default: break;
  }
  throw InputError("mark set " + std::to_string(mark) + " has no text form");
}

MarkSet mark_from_string(std::string_view text) {
  if (text == "none") return kNoMark;
  if (text == "arrow") return kArrow;
  if (text == "tail") return kTail;
  if (text == "circle") return kCircle;
  if (text == "arrow+tail") return kArrow | kTail;
  throw InputError("unknown endpoint mark '" + std::string(text) + "'");
}

NodeSet::NodeSet(std::size_t universe, std::initializer_list<NodeId> ids) : bits_(universe, false) {
  for (NodeId id : ids) insert(id);
}

void NodeSet::insert(NodeId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= bits_.size()) {
    throw InputError("node id " + std::to_string(id) + " outside node set universe");
  }
  bits_[id] = true;
}

void NodeSet::erase(NodeId id) {
  if (id >= 0 && static_cast<std::size_t>(id) < bits_.size()) bits_[id] = false;
}

std::size_t NodeSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

NodeSet& NodeSet::operator|=(const NodeSet& other) {
  if (other.bits_.size() > bits_.size()) bits_.resize(other.bits_.size(), false);
  for (std::size_t i = 0; i < other.bits_.size(); ++i) {
    if (other.bits_[i]) bits_[i] = true;
  }
  return *this;
}

MixedGraph::MixedGraph(std::vector<std::string> names, GraphKind kind)
    : names_(std::move(names)), marks_(names_.size() * names_.size(), kNoMark), kind_(kind) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto [it, inserted] = ids_.emplace(names_[i], static_cast<NodeId>(i));
    if (!inserted) throw InputError("duplicate node name '" + names_[i] + "'");
  }
}

NodeId MixedGraph::id(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) throw InputError("unknown node '" + std::string(name) + "'");
  return it->second;
}

bool MixedGraph::has_node(std::string_view name) const {
  return ids_.count(std::string(name)) != 0;
}

NodeSet MixedGraph::node_set(const std::vector<std::string>& names) const {
  NodeSet out(size());
  for (const auto& n : names) out.insert(id(n));
  return out;
}

void MixedGraph::check(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size()) {
    throw InputError("unknown node id " + std::to_string(id));
  }
}

void MixedGraph::set_edge(NodeId a, NodeId b, MarkSet at_a, MarkSet at_b) {
  check(a);
  check(b);
  if (a == b) throw InputError("self loops are not allowed (" + names_[a] + ")");
  if ((at_a == kNoMark) != (at_b == kNoMark)) {
    throw InputError("an edge needs marks at both ends (" + names_[a] + ", " + names_[b] + ")");
  }
  marks_[index(b, a)] = at_a;
  marks_[index(a, b)] = at_b;
}

void MixedGraph::add_directed(NodeId a, NodeId b) {
  MarkSet at_a = mark(b, a);
  MarkSet at_b = mark(a, b);
  set_edge(a, b, static_cast<MarkSet>(at_a | kTail), static_cast<MarkSet>(at_b | kArrow));
}

void MixedGraph::add_bidirected(NodeId a, NodeId b) {
  MarkSet at_a = mark(b, a);
  MarkSet at_b = mark(a, b);
  set_edge(a, b, static_cast<MarkSet>(at_a | kArrow), static_cast<MarkSet>(at_b | kArrow));
}

bool MixedGraph::has_directed(NodeId a, NodeId b) const {
  if (!adjacent(a, b)) return false;
  MarkSet at_a = mark(b, a);
  MarkSet at_b = mark(a, b);
  if ((at_a | at_b) & kCircle) return false;
  return (at_a & kTail) && (at_b & kArrow);
}

bool MixedGraph::has_bidirected(NodeId a, NodeId b) const {
  if (!adjacent(a, b)) return false;
  MarkSet at_a = mark(b, a);
  MarkSet at_b = mark(a, b);
  if ((at_a | at_b) & kCircle) return false;
  return (at_a & kArrow) && (at_b & kArrow);
}

std::vector<EdgeComponent> MixedGraph::components(NodeId a, NodeId b) const {
  std::vector<EdgeComponent> out;
  if (!adjacent(a, b)) return out;
  MarkSet at_a = mark(b, a);
  MarkSet at_b = mark(a, b);
  if (((at_a | at_b) & kCircle) || kind_ == GraphKind::Pag || kind_ == GraphKind::Search) {
    out.push_back({static_cast<Mark>(at_a), static_cast<Mark>(at_b)});
    return out;
  }
  if ((at_a & kTail) && (at_b & kArrow)) out.push_back({kTail, kArrow});
  if ((at_b & kTail) && (at_a & kArrow)) out.push_back({kArrow, kTail});
  if ((at_a & kArrow) && (at_b & kArrow)) out.push_back({kArrow, kArrow});
  return out;
}

std::vector<NodeId> MixedGraph::neighbors(NodeId a) const {
  check(a);
  std::vector<NodeId> out;
  for (NodeId b = 0; b < static_cast<NodeId>(size()); ++b) {
    if (adjacent(a, b)) out.push_back(b);
  }
  return out;
}

std::vector<NodeId> MixedGraph::parents(NodeId a) const {
  check(a);
  std::vector<NodeId> out;
  for (NodeId b = 0; b < static_cast<NodeId>(size()); ++b) {
    if (has_directed(b, a)) out.push_back(b);
  }
  return out;
}

std::vector<EdgeRecord> MixedGraph::edges() const {
  std::vector<EdgeRecord> out;
  for (NodeId a = 0; a < static_cast<NodeId>(size()); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(size()); ++b) {
      if (adjacent(a, b)) out.push_back({a, b, mark(b, a), mark(a, b)});
    }
  }
  return out;
}

std::size_t MixedGraph::edge_count() const {
  std::size_t n = 0;
  for (NodeId a = 0; a < static_cast<NodeId>(size()); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(size()); ++b) {
      if (adjacent(a, b)) ++n;
    }
  }
  return n;
}

namespace {

bool single_mark(MarkSet m) { return m == kArrow || m == kTail || m == kCircle; }

}  // namespace

void MixedGraph::validate() const {
  const auto fail = [&](NodeId a, NodeId b, const std::string& why) {
    throw InputError(std::string(to_string(kind_)) + " invariant violated at (" + names_[a] + ", " +
                     names_[b] + "): " + why);
  };
  for (NodeId a = 0; a < static_cast<NodeId>(size()); ++a) {
    if (marks_[index(a, a)] != kNoMark) fail(a, a, "self loop");
    for (NodeId b = a + 1; b < static_cast<NodeId>(size()); ++b) {
      MarkSet at_a = mark(b, a);
      MarkSet at_b = mark(a, b);
      if ((at_a == kNoMark) != (at_b == kNoMark)) fail(a, b, "half edge");
      if (at_a == kNoMark) continue;
      const bool circles = (at_a | at_b) & kCircle;
      switch (kind_) {
        case GraphKind::Dag:
          if (!((at_a == kTail && at_b == kArrow) || (at_a == kArrow && at_b == kTail))) {
            fail(a, b, "DAG edges must be directed");
          }
          break;
        case GraphKind::Smcm:
          if (circles) fail(a, b, "circle marks outside a PAG");
          if ((at_a & kTail) && (at_b & kTail)) fail(a, b, "tail at both ends");
          break;
        case GraphKind::Mag:
          if (circles) fail(a, b, "circle marks outside a PAG");
          if (!single_mark(at_a) || !single_mark(at_b)) fail(a, b, "more than one edge");
          if (at_a == kTail && at_b == kTail) fail(a, b, "tail at both ends");
          break;
        case GraphKind::Pag:
        case GraphKind::Search:
          if (!single_mark(at_a) || !single_mark(at_b)) fail(a, b, "more than one edge");
          break;
      }
    }
  }
  if (kind_ == GraphKind::Dag || kind_ == GraphKind::Smcm || kind_ == GraphKind::Mag) {
    if (has_directed_cycle(*this)) throw InputError(std::string(to_string(kind_)) + " has a directed cycle");
  }
  if (kind_ == GraphKind::Mag) {
    for (const auto& e : edges()) {
      if (e.at_a == kArrow && e.at_b == kArrow) {
        if (is_ancestor(*this, e.a, e.b) || is_ancestor(*this, e.b, e.a)) {
          throw InputError("mag has an almost directed cycle through (" + names_[e.a] + ", " +
                           names_[e.b] + ")");
        }
      }
    }
  }
}

}  // namespace mosaic
