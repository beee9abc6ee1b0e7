#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mosaic/encode/registry.hpp"
#include "mosaic/encode/search_graph.hpp"
#include "mosaic/fci/fci.hpp"
#include "mosaic/solve/cnf.hpp"

namespace mosaic {

enum class LiteralKind { Adjacency, NonAdjacency, Collider, NonCollider };

const char* to_string(LiteralKind kind);

/// One observed feature of one PAG, as a literal over the problem's variables.
struct SoftLiteral {
  LiteralKind kind = LiteralKind::Adjacency;
  int dataset = 0;
  std::vector<std::string> nodes;  // pair, triple, or discriminating path
  Lit lit = 0;
  /// Largest p-value seen for the pair that decides the feature (the pair itself,
  /// or the endpoints of the triple / discriminating path).
  double p = 1.0;
  std::pair<std::string, std::string> pair;
  double score = 0.0;  // filled by conflict resolution

  bool claims_independence() const { return kind == LiteralKind::NonAdjacency; }
};

struct EncodeOptions {
  std::optional<int> mpl = 3;  // nullopt: unbounded path length
  /// Ancestor atoms through a transitive-closure encoding instead of the
  /// length-bounded path expansion.
  bool exact_ancestry = false;
};

struct CnfProblem {
  MixedGraph search;
  VarRegistry registry;
  Cnf cnf;
  std::vector<SoftLiteral> soft;
  std::vector<std::vector<std::string>> observed;  // per dataset
  std::vector<std::vector<std::string>> targets;   // per dataset

  /// Edge/arrow/tail variables of the pairs adjacent in the search graph.
  std::vector<int> core_vars() const { return registry.core_vars(); }
  int edge_var(NodeId a, NodeId b) const { return registry.find_edge(a, b); }
  int arrow_var(NodeId from, NodeId at) const { return registry.find_arrow(from, at); }
  int tail_var(NodeId from, NodeId at) const { return registry.find_tail(from, at); }
};

/// Hard clauses and the soft-literal list for the given PAGs over `h`.
/// Throws InputError when a PAG or target list mentions a node missing from `h`.
CnfProblem build_constraints(const MixedGraph& h, const std::vector<FciResult>& results,
                             const std::vector<std::vector<std::string>>& targets,
                             const EncodeOptions& options = {});

/// DIMACS text of the hard clauses, with a comment line per core variable.
void export_dimacs(const CnfProblem& problem, std::ostream& out);
/// {"variables": [{"id", "atom", "kind", "nodes", "context"}]}
std::string variables_json(const CnfProblem& problem, int indent = 2);
/// [{"kind", "dataset", "nodes", "literal", "p", "score"}]
std::string soft_literals_json(const std::vector<SoftLiteral>& literals, int indent = 2);
/// Writes <stem>.cnf, <stem>.vars.json and <stem>.soft.json.
void export_problem(const CnfProblem& problem, const std::filesystem::path& stem);

}  // namespace mosaic
