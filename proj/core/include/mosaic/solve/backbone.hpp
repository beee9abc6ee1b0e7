#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mosaic/solve/sat.hpp"

namespace mosaic {

enum class Polarity { ForcedTrue, ForcedFalse, Free };

const char* to_string(Polarity polarity);

struct BackboneReport {
  std::map<int, Polarity> polarity;  // candidate variable -> polarity
  std::uint64_t solver_calls = 0;

  Polarity at(int var) const;
};

/// Classifies every candidate variable under `fixed`. Candidates that took both
/// values in some model found along the way are free without a dedicated
/// query, so at most |candidates| + 1 solver calls are made.
/// Throws PreconditionError when the clauses plus `fixed` are unsatisfiable.
BackboneReport compute_backbone(SatBackend& solver, const std::vector<Lit>& fixed,
                                const std::vector<int>& candidates);

BackboneReport compute_backbone(const Cnf& cnf, const std::vector<Lit>& fixed,
                                const std::vector<int>& candidates);

}  // namespace mosaic
