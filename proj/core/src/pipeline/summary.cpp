#include "mosaic/pipeline/summary.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(EdgeStatus status) {
  switch (status) {
    case EdgeStatus::Solid: return "solid";
    case EdgeStatus::Dashed: return "dashed";
    case EdgeStatus::Absent: return "absent";
  }
  return "absent";
}

EdgeStatus edge_status_from_string(const std::string& text) {
  if (text == "solid") return EdgeStatus::Solid;
  if (text == "dashed") return EdgeStatus::Dashed;
  if (text == "absent") return EdgeStatus::Absent;
  throw InputError("unknown edge status '" + text + "'");
}

const SummaryEdge* SummaryGraph::find(NodeId a, NodeId b) const {
  const NodeId lo = std::min(a, b), hi = std::max(a, b);
  for (const auto& e : edges) {
    if (e.a == lo && e.b == hi) return &e;
  }
  return nullptr;
}

EdgeStatus SummaryGraph::status(NodeId a, NodeId b) const {
  const SummaryEdge* e = find(a, b);
  return e ? e->status : EdgeStatus::Absent;
}

MarkSet SummaryGraph::mark(NodeId from, NodeId at) const {
  const SummaryEdge* e = find(from, at);
  if (!e) return kNoMark;
  return at == e->a ? e->at_a : e->at_b;
}

NodeId SummaryGraph::id(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("unknown node '" + name + "'");
  return static_cast<NodeId>(it - names.begin());
}

MarkSet endpoint_mark(Polarity arrow, Polarity tail) {
  if (arrow == Polarity::ForcedFalse) return kTail;
  if (tail == Polarity::ForcedFalse) return kArrow;
  if (arrow == Polarity::ForcedTrue && tail == Polarity::ForcedTrue) return kArrow | kTail;
  return kCircle;
}

SummaryGraph summarize(const CnfProblem& problem, const BackboneReport& backbone) {
  SummaryGraph out;
  out.names = problem.search.names();
  for (const auto& e : problem.search.edges()) {
    const int edge = problem.edge_var(e.a, e.b);
    const Polarity p = backbone.at(edge);
    if (p == Polarity::ForcedFalse) continue;
    SummaryEdge s{e.a, e.b, p == Polarity::ForcedTrue ? EdgeStatus::Solid : EdgeStatus::Dashed, kCircle, kCircle};
    s.at_a = endpoint_mark(backbone.at(problem.arrow_var(e.b, e.a)), backbone.at(problem.tail_var(e.b, e.a)));
    s.at_b = endpoint_mark(backbone.at(problem.arrow_var(e.a, e.b)), backbone.at(problem.tail_var(e.a, e.b)));
    out.edges.push_back(s);
  }
  return out;
}

std::string summary_to_json(const SummaryGraph& summary, int indent) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : summary.edges) {
    edges.push_back({{"x", summary.names.at(e.a)},
                     {"y", summary.names.at(e.b)},
                     {"status", to_string(e.status)},
                     {"mark_at_x", mark_to_string(e.at_a)},
                     {"mark_at_y", mark_to_string(e.at_b)}});
  }
  return nlohmann::json{{"nodes", summary.names}, {"edges", edges}}.dump(indent);
}

SummaryGraph summary_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("summary json: ") + e.what());
  }
  SummaryGraph out;
  try {
    out.names = doc.at("nodes").get<std::vector<std::string>>();
    for (const auto& e : doc.at("edges")) {
      NodeId a = out.id(e.at("x").get<std::string>());
      NodeId b = out.id(e.at("y").get<std::string>());
      MarkSet at_a = mark_from_string(e.at("mark_at_x").get<std::string>());
      MarkSet at_b = mark_from_string(e.at("mark_at_y").get<std::string>());
      if (a == b) throw InputError("summary edge joins a node to itself");
      if (a > b) {
        std::swap(a, b);
        std::swap(at_a, at_b);
      }
      const EdgeStatus status = edge_status_from_string(e.at("status").get<std::string>());
      if (status == EdgeStatus::Absent) continue;
      out.edges.push_back({a, b, status, at_a, at_b});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("summary json: ") + e.what());
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const SummaryEdge& x, const SummaryEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return out;
}

namespace {

const char* dot_arrow(MarkSet m) {
  if (m == kArrow) return "normal";
  if (m == kTail) return "none";
  if (m == (kArrow | kTail)) return "teenormal";
  return "odot";
}

}  // namespace

std::string summary_to_dot(const SummaryGraph& summary) {
  std::ostringstream out;
  out << "digraph summary {\n";
  for (const auto& n : summary.names) out << "  \"" << n << "\";\n";
  for (const auto& e : summary.edges) {
    out << "  \"" << summary.names[e.a] << "\" -> \"" << summary.names[e.b] << "\" [dir=both, arrowtail="
        << dot_arrow(e.at_a) << ", arrowhead=" << dot_arrow(e.at_b);
    if (e.status == EdgeStatus::Dashed) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mosaic
