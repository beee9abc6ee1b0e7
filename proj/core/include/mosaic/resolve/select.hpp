#pragma once

#include <string>
#include <vector>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/resolve/mmr.hpp"

namespace mosaic {

enum class Strategy { Mmr, None };

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& text);

struct LiteralDecision {
  SoftLiteral literal;  // as scored, after any flip
  bool flipped = false;
  bool accepted = false;
};

struct SelectionReport {
  Strategy strategy = Strategy::Mmr;
  BetaMixtureFit fit;
  std::vector<LiteralDecision> decisions;  // in visiting order

  std::vector<SoftLiteral> accepted() const;
  std::vector<Lit> accepted_literals() const;
  std::size_t skipped() const;
};

/// P-values of the adjacency literals, one per pair and dataset.
std::vector<double> pooled_pvalues(const std::vector<SoftLiteral>& literals);

/// Scores every literal, redirects (non-)adjacencies to the MMR verdict and
/// greedily accepts literals in descending score order while the hard clauses
/// plus the accepted set stay satisfiable.
SelectionReport select_consistent_literals(const CnfProblem& problem, const BetaMixtureFit& fit);
SelectionReport select_consistent_literals(const CnfProblem& problem);

/// Accepts the literals as given. Throws DegenerateInputError when they
/// contradict the hard clauses.
SelectionReport accept_all_literals(const CnfProblem& problem);

/// [{"kind", "dataset", "nodes", "p", "score", "direction", "flipped", "accepted"}] plus the fit.
std::string selection_json(const SelectionReport& report, int indent = 2);

}  // namespace mosaic
