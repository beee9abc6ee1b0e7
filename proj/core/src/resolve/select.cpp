#include "mosaic/resolve/select.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

#include "mosaic/errors.hpp"
#include "mosaic/solve/sat.hpp"

namespace mosaic {

const char* to_string(Strategy strategy) {
  return strategy == Strategy::Mmr ? "mmr" : "none";
}

Strategy strategy_from_string(const std::string& text) {
  if (text == "mmr") return Strategy::Mmr;
  if (text == "none") return Strategy::None;
  throw InputError("unknown strategy '" + text + "' (expected mmr or none)");
}

std::vector<SoftLiteral> SelectionReport::accepted() const {
  std::vector<SoftLiteral> out;
  for (const auto& d : decisions) {
    if (d.accepted) out.push_back(d.literal);
  }
  return out;
}

std::vector<Lit> SelectionReport::accepted_literals() const {
  std::vector<Lit> out;
  for (const auto& d : decisions) {
    if (d.accepted) out.push_back(d.literal.lit);
  }
  return out;
}

std::size_t SelectionReport::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(decisions.begin(), decisions.end(), [](const LiteralDecision& d) { return !d.accepted; }));
}

std::vector<double> pooled_pvalues(const std::vector<SoftLiteral>& literals) {
  std::vector<double> out;
  for (const auto& l : literals) {
    if (l.kind == LiteralKind::Adjacency || l.kind == LiteralKind::NonAdjacency) out.push_back(l.p);
  }
  return out;
}

SelectionReport select_consistent_literals(const CnfProblem& problem, const BetaMixtureFit& fit) {
  SelectionReport report;
  report.strategy = Strategy::Mmr;
  report.fit = fit;
  for (const auto& original : problem.soft) {
    LiteralDecision d;
    d.literal = original;
    const MmrScore s = mmr_score(original.p, fit);
    d.literal.score = s.score;
    const bool is_pair = original.kind == LiteralKind::Adjacency || original.kind == LiteralKind::NonAdjacency;
    if (is_pair && s.independence != original.claims_independence()) {
      d.flipped = true;
      d.literal.kind = s.independence ? LiteralKind::NonAdjacency : LiteralKind::Adjacency;
      d.literal.lit = -original.lit;
    }
    report.decisions.push_back(std::move(d));
  }
  std::stable_sort(report.decisions.begin(), report.decisions.end(),
                   [](const LiteralDecision& a, const LiteralDecision& b) {
                     const auto& x = a.literal;
                     const auto& y = b.literal;
                     if (x.score != y.score) return x.score > y.score;
                     return std::tie(x.dataset, x.nodes, x.kind) < std::tie(y.dataset, y.nodes, y.kind);
                   });
  CdclSolver solver(problem.cnf);
  if (solver.solve() != SatResult::Sat) throw InternalError("hard constraints are unsatisfiable");
  for (auto& d : report.decisions) {
    if (solver.solve({d.literal.lit}) == SatResult::Sat) {
      d.accepted = true;
      solver.add_clause({d.literal.lit});
    }
  }
  return report;
}

SelectionReport select_consistent_literals(const CnfProblem& problem) {
  return select_consistent_literals(problem, fit_beta_mixture(pooled_pvalues(problem.soft)));
}

SelectionReport accept_all_literals(const CnfProblem& problem) {
  SelectionReport report;
  report.strategy = Strategy::None;
  std::vector<Lit> lits;
  for (const auto& l : problem.soft) {
    report.decisions.push_back({l, false, true});
    lits.push_back(l.lit);
  }
  if (check_sat(problem.cnf, lits).result != SatResult::Sat) {
    throw DegenerateInputError("the observed features contradict each other; rerun with conflict resolution");
  }
  return report;
}

namespace {

nlohmann::json direction(const SoftLiteral& l) {
  if (l.kind == LiteralKind::Collider || l.kind == LiteralKind::NonCollider) return nullptr;
  return l.claims_independence() ? "independence" : "dependence";
}

}  // namespace

std::string selection_json(const SelectionReport& report, int indent) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& d : report.decisions) {
    const auto& l = d.literal;
    rows.push_back({{"kind", to_string(l.kind)},
                    {"dataset", l.dataset},
                    {"nodes", l.nodes},
                    {"p", l.p},
                    {"score", l.score},
                    {"direction", direction(l)},
                    {"flipped", d.flipped},
                    {"accepted", d.accepted}});
  }
  nlohmann::json out{{"strategy", to_string(report.strategy)},
                     {"fit",
                      {{"pi0", report.fit.pi0},
                       {"xi", report.fit.xi},
                       {"count", report.fit.count},
                       {"fallback", report.fit.fallback}}},
                     {"literals", rows}};
  return out.dump(indent);
}

}  // namespace mosaic
