#pragma once

#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "mosaic/graph/mixed_graph.hpp"
#include "mosaic/stats/pvalue_cache.hpp"

namespace mosaic {

enum class TripleLabel { Collider, NonCollider, Ambiguous };

const char* to_string(TripleLabel label);

/// Unshielded triple x - mid - y, stored with x < y.
struct TripleRecord {
  int x;
  int mid;
  int y;
  TripleLabel label;
};

/// nodes = <theta, ..., alpha, beta, gamma>; `collider` tells whether beta is a
/// collider on the path.
struct DiscriminatingRecord {
  std::vector<int> nodes;
  bool collider;
};

struct FciOptions {
  double alpha = 0.1;
  int max_k = 5;
  bool pds = true;
  /// Label colliders only when every separating set found agrees.
  bool conservative = true;
};

struct FciResult {
  MixedGraph pag;
  std::map<std::pair<int, int>, std::vector<int>> sepsets;
  std::map<std::pair<int, int>, double> max_p;
  std::vector<TripleRecord> triples;
  std::vector<DiscriminatingRecord> discriminating;

  const std::vector<int>* sepset(int x, int y) const;
  TripleLabel label(int x, int mid, int y) const;  // Ambiguous if not recorded
};

/// Runs every test through `cache`; variable indices follow cache.ci_test().variables().
FciResult run_fci(PValueCache& cache, const FciOptions& options = {});

namespace detail {

using Ambiguous = std::set<std::tuple<int, int, int>>;

/// Applies the orientation rules to a fixpoint. Records discriminating paths
/// found on the final graph.
void orient_pag(MixedGraph& pag, const std::map<std::pair<int, int>, std::vector<int>>& sepsets,
                const Ambiguous& ambiguous, std::vector<DiscriminatingRecord>& discriminating);

}  // namespace detail

}  // namespace mosaic
