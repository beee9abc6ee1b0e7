#include "mosaic/solve/backbone.hpp"

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(Polarity polarity) {
  switch (polarity) {
    case Polarity::ForcedTrue: return "forced-true";
    case Polarity::ForcedFalse: return "forced-false";
    case Polarity::Free: return "free";
  }
  return "free";
}

Polarity BackboneReport::at(int var) const {
  auto it = polarity.find(var);
  if (it == polarity.end()) throw PreconditionError("variable " + std::to_string(var) + " was not a backbone candidate");
  return it->second;
}

BackboneReport compute_backbone(SatBackend& solver, const std::vector<Lit>& fixed,
                                const std::vector<int>& candidates) {
  const std::uint64_t calls_before = solver.calls();
  for (int v : candidates) {
    if (v < 1 || v > solver.num_vars()) {
      throw InputError("backbone candidate " + std::to_string(v) + " is not a solver variable");
    }
  }
  if (solver.solve(fixed) == SatResult::Unsat) {
    throw PreconditionError("backbone requested for an unsatisfiable formula");
  }
  std::map<int, std::pair<bool, bool>> seen;  // var -> (seen true, seen false)
  const auto record_model = [&]() {
    for (int v : candidates) {
      auto& s = seen[v];
      (solver.model_value(v) ? s.first : s.second) = true;
    }
  };
  record_model();

  BackboneReport report;
  std::vector<Lit> assumptions = fixed;
  for (int v : candidates) {
    if (report.polarity.count(v)) continue;
    const auto [t, f] = seen[v];
    if (t && f) {
      report.polarity[v] = Polarity::Free;
      continue;
    }
    const Lit flip = t ? -v : v;
    assumptions.push_back(flip);
    const SatResult r = solver.solve(assumptions);
    assumptions.pop_back();
    if (r == SatResult::Unsat) {
      report.polarity[v] = t ? Polarity::ForcedTrue : Polarity::ForcedFalse;
      // implied by the formula, so keeping it only narrows later searches
      assumptions.push_back(-flip);
    } else {
      record_model();
      report.polarity[v] = Polarity::Free;
    }
  }
  report.solver_calls = solver.calls() - calls_before;
  return report;
}

BackboneReport compute_backbone(const Cnf& cnf, const std::vector<Lit>& fixed,
                                const std::vector<int>& candidates) {
  CdclSolver solver(cnf);
  return compute_backbone(solver, fixed, candidates);
}

}  // namespace mosaic
