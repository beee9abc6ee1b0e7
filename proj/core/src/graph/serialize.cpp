#include "mosaic/graph/serialize.hpp"

#include <sstream>

#include <json.hpp>

#include "mosaic/errors.hpp"

namespace mosaic {

using nlohmann::json;

namespace {

bool is_double(MarkSet at_a, MarkSet at_b) {
  return ((at_a == (kArrow | kTail)) && at_b == kArrow) || ((at_b == (kArrow | kTail)) && at_a == kArrow);
}

const char* dot_arrow(MarkSet m) {
  switch (m) {
    case kArrow: return "normal";
    case kCircle: return "odot";
    default: return "none";
  }
}

}  // namespace

std::string graph_to_json(const MixedGraph& g, int indent) {
  json doc;
  doc["kind"] = to_string(g.kind());
  doc["nodes"] = g.names();
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json rec;
    rec["x"] = g.name(e.a);
    rec["y"] = g.name(e.b);
    if (is_double(e.at_a, e.at_b)) {
      const bool a_to_b = e.at_a == (kArrow | kTail);
      rec["mark_at_x"] = a_to_b ? "tail" : "arrow";
      rec["mark_at_y"] = a_to_b ? "arrow" : "tail";
      rec["double"] = true;
    } else {
      rec["mark_at_x"] = mark_to_string(e.at_a);
      rec["mark_at_y"] = mark_to_string(e.at_b);
      rec["double"] = false;
    }
    edges.push_back(std::move(rec));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(indent);
}

MixedGraph graph_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw InputError(std::string("graph JSON does not parse: ") + ex.what());
  }
  try {
    MixedGraph g(doc.at("nodes").get<std::vector<std::string>>(),
                 graph_kind_from_string(doc.value("kind", std::string("smcm"))));
    for (const auto& rec : doc.at("edges")) {
      const NodeId a = g.id(rec.at("x").get<std::string>());
      const NodeId b = g.id(rec.at("y").get<std::string>());
      const MarkSet at_a = mark_from_string(rec.at("mark_at_x").get<std::string>());
      const MarkSet at_b = mark_from_string(rec.at("mark_at_y").get<std::string>());
      if (at_a == kNoMark || at_b == kNoMark) throw InputError("edge records need two marks");
      g.set_edge(a, b, at_a, at_b);
      if (rec.value("double", false)) {
        if (!((at_a == kTail && at_b == kArrow) || (at_a == kArrow && at_b == kTail))) {
          throw InputError("a double edge must be written as its directed component");
        }
        g.add_bidirected(a, b);
      }
    }
    g.validate();
    return g;
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed graph JSON: ") + ex.what());
  }
}

std::string graph_to_dot(const MixedGraph& g) {
  std::ostringstream out;
  out << "digraph \"" << to_string(g.kind()) << "\" {\n";
  for (const auto& name : g.names()) out << "  \"" << name << "\";\n";
  for (const auto& e : g.edges()) {
    for (const auto& c : g.components(e.a, e.b)) {
      out << "  \"" << g.name(e.a) << "\" -> \"" << g.name(e.b) << "\" [dir=both, arrowtail="
          << dot_arrow(c.at_a) << ", arrowhead=" << dot_arrow(c.at_b) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace mosaic
