#include "mosaic/fci/fci.hpp"

#include <algorithm>
#include <functional>

#include "mosaic/errors.hpp"

namespace mosaic {

const char* to_string(TripleLabel label) {
  switch (label) {
    case TripleLabel::Collider: return "collider";
    case TripleLabel::NonCollider: return "dnc";
    case TripleLabel::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

const std::vector<int>* FciResult::sepset(int x, int y) const {
  auto it = sepsets.find(std::minmax(x, y));
  return it == sepsets.end() ? nullptr : &it->second;
}

TripleLabel FciResult::label(int x, int mid, int y) const {
  if (x > y) std::swap(x, y);
  for (const auto& t : triples) {
    if (t.x == x && t.mid == mid && t.y == y) return t.label;
  }
  return TripleLabel::Ambiguous;
}

namespace {

// Calls fn on every size-k subset of pool (in lexicographic order) until fn returns true.
bool for_each_subset(const std::vector<int>& pool, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(pool.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    if (fn(subset)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

class FciRun {
 public:
  FciRun(PValueCache& cache, const FciOptions& options)
      : cache_(cache), opt_(options), n_(static_cast<int>(cache.ci_test().variables().size())),
        adj_(n_, std::vector<bool>(n_, true)) {
    for (int i = 0; i < n_; ++i) adj_[i][i] = false;
  }

  FciResult run() {
    if (n_ < 2) throw InputError("FCI needs at least two variables");
    skeleton();
    MixedGraph pag = circle_graph();
    detail::Ambiguous ambiguous;
    auto labels = label_triples(ambiguous);
    apply_colliders(pag, labels);
    if (opt_.pds) {
      possible_dsep_stage(pag);
      pag = circle_graph();
      ambiguous.clear();
      labels = label_triples(ambiguous);
      apply_colliders(pag, labels);
    }
    FciResult result;
    detail::orient_pag(pag, sepsets_, ambiguous, result.discriminating);
    result.pag = std::move(pag);
    result.sepsets = sepsets_;
    result.triples = std::move(labels);
    for (const auto& [pair, rec] : cache_.max_records()) result.max_p[pair] = rec.p;
    return result;
  }

 private:
  bool independent(int x, int y, const std::vector<int>& z) {
    const CiOutcome out = cache_.test(x, y, z);
    return !out.skipped && out.p > opt_.alpha;
  }

  std::vector<int> neighbors(int x) const {
    std::vector<int> out;
    for (int y = 0; y < n_; ++y) {
      if (adj_[x][y]) out.push_back(y);
    }
    return out;
  }

  void remove(int x, int y, const std::vector<int>& z) {
    adj_[x][y] = adj_[y][x] = false;
    auto sorted = z;
    std::sort(sorted.begin(), sorted.end());
    sepsets_[std::minmax(x, y)] = sorted;
  }

  void skeleton() {
    for (int level = 0; level <= opt_.max_k; ++level) {
      std::vector<std::vector<int>> snapshot(n_);
      for (int x = 0; x < n_; ++x) snapshot[x] = neighbors(x);
      bool any = false;
      for (int x = 0; x < n_; ++x) {
        for (int y : snapshot[x]) {
          if (!adj_[x][y]) continue;
          std::vector<int> pool;
          for (int v : snapshot[x]) {
            if (v != y) pool.push_back(v);
          }
          if (static_cast<int>(pool.size()) < level) continue;
          any = true;
          for_each_subset(pool, level, [&](const std::vector<int>& s) {
            if (!independent(x, y, s)) return false;
            remove(x, y, s);
            return true;
          });
        }
      }
      if (!any) break;
    }
  }

  MixedGraph circle_graph() const {
    MixedGraph g(cache_.ci_test().variables(), GraphKind::Pag);
    for (int x = 0; x < n_; ++x) {
      for (int y = x + 1; y < n_; ++y) {
        if (adj_[x][y]) g.set_edge(x, y, kCircle, kCircle);
      }
    }
    return g;
  }

  TripleLabel conservative_label(int x, int mid, int y) {
    bool with_mid = false;
    bool without_mid = false;
    for (int side = 0; side < 2; ++side) {
      const int from = side == 0 ? x : y;
      const int other = side == 0 ? y : x;
      std::vector<int> pool;
      for (int v : neighbors(from)) {
        if (v != other) pool.push_back(v);
      }
      const int top = std::min<int>(opt_.max_k, static_cast<int>(pool.size()));
      for (int k = 0; k <= top; ++k) {
        for_each_subset(pool, k, [&](const std::vector<int>& s) {
          if (independent(x, y, s)) {
            (std::find(s.begin(), s.end(), mid) != s.end() ? with_mid : without_mid) = true;
          }
          return false;
        });
      }
    }
    if (with_mid && without_mid) return TripleLabel::Ambiguous;
    if (with_mid) return TripleLabel::NonCollider;
    if (without_mid) return TripleLabel::Collider;
    const auto& sep = sepsets_.at(std::minmax(x, y));
    return std::find(sep.begin(), sep.end(), mid) != sep.end() ? TripleLabel::NonCollider
                                                              : TripleLabel::Collider;
  }

  std::vector<TripleRecord> label_triples(detail::Ambiguous& ambiguous) {
    std::vector<TripleRecord> out;
    for (int mid = 0; mid < n_; ++mid) {
      const auto nb = neighbors(mid);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          const int x = nb[i];
          const int y = nb[j];
          if (adj_[x][y]) continue;
          TripleLabel label;
          if (opt_.conservative) {
            label = conservative_label(x, mid, y);
          } else {
            const auto& sep = sepsets_.at(std::minmax(x, y));
            label = std::find(sep.begin(), sep.end(), mid) != sep.end() ? TripleLabel::NonCollider
                                                                       : TripleLabel::Collider;
          }
          if (label == TripleLabel::Ambiguous) ambiguous.emplace(x, mid, y);
          out.push_back({x, mid, y, label});
        }
      }
    }
    return out;
  }

  static void apply_colliders(MixedGraph& pag, const std::vector<TripleRecord>& labels) {
    for (const auto& t : labels) {
      if (t.label != TripleLabel::Collider) continue;
      pag.set_mark(t.x, t.mid, kArrow);
      pag.set_mark(t.y, t.mid, kArrow);
    }
  }

  // Nodes reachable from x along paths whose every inner triple is a collider or a triangle.
  std::vector<int> possible_dsep(const MixedGraph& pag, int x) const {
    std::vector<bool> in_set(n_, false);
    std::vector<std::vector<bool>> seen(n_, std::vector<bool>(n_, false));
    std::vector<std::pair<int, int>> stack;
    for (int b : neighbors(x)) {
      seen[x][b] = true;
      in_set[b] = true;
      stack.emplace_back(x, b);
    }
    while (!stack.empty()) {
      const auto [a, b] = stack.back();
      stack.pop_back();
      for (int c : neighbors(b)) {
        if (c == a || c == x || seen[b][c]) continue;
        const bool collider = pag.mark(a, b) == kArrow && pag.mark(c, b) == kArrow;
        if (!collider && !adj_[a][c]) continue;
        seen[b][c] = true;
        in_set[c] = true;
        stack.emplace_back(b, c);
      }
    }
    std::vector<int> out;
    for (int v = 0; v < n_; ++v) {
      if (in_set[v] && v != x) out.push_back(v);
    }
    return out;
  }

  void possible_dsep_stage(const MixedGraph& pag) {
    std::vector<std::vector<int>> pds(n_);
    for (int x = 0; x < n_; ++x) pds[x] = possible_dsep(pag, x);
    for (int x = 0; x < n_; ++x) {
      for (int y = x + 1; y < n_; ++y) {
        if (!adj_[x][y]) continue;
        bool removed = false;
        for (int side = 0; side < 2 && !removed; ++side) {
          std::vector<int> pool;
          for (int v : pds[side == 0 ? x : y]) {
            if (v != x && v != y) pool.push_back(v);
          }
          const int top = std::min<int>(opt_.max_k, static_cast<int>(pool.size()));
          for (int k = 0; k <= top && !removed; ++k) {
            removed = for_each_subset(pool, k, [&](const std::vector<int>& s) {
              if (!independent(x, y, s)) return false;
              remove(x, y, s);
              return true;
            });
          }
        }
      }
    }
  }

  PValueCache& cache_;
  FciOptions opt_;
  int n_;
  std::vector<std::vector<bool>> adj_;
  std::map<std::pair<int, int>, std::vector<int>> sepsets_;
};

}  // namespace

FciResult run_fci(PValueCache& cache, const FciOptions& options) {
  return FciRun(cache, options).run();
}

}  // namespace mosaic
