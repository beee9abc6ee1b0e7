#include <algorithm>
#include <deque>

#include "mosaic/fci/fci.hpp"

namespace mosaic::detail {

namespace {

class Orienter {
 public:
  Orienter(MixedGraph& pag, const std::map<std::pair<int, int>, std::vector<int>>& sepsets,
           const Ambiguous& ambiguous)
      : g_(pag), sepsets_(sepsets), ambiguous_(ambiguous), n_(static_cast<int>(pag.size())) {}

  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      changed |= rule1();
      changed |= rule2();
      changed |= rule3();
      changed |= rule4();
      changed |= rule8();
      changed |= rule9();
      changed |= rule10();
    }
  }

  // One record per (alpha, beta, gamma) whose discriminating path exists in the final graph.
  void harvest(std::vector<DiscriminatingRecord>& out) const {
    for (int beta = 0; beta < n_; ++beta) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!g_.adjacent(beta, gamma)) continue;
        for (int alpha = 0; alpha < n_; ++alpha) {
          auto path = discriminating_path(alpha, beta, gamma);
          if (path.empty()) continue;
          out.push_back({path, !in_sepset(path.front(), gamma, beta)});
        }
      }
    }
  }

 private:
  MarkSet at(int a, int b) const { return g_.mark(a, b); }
  bool adj(int a, int b) const { return g_.adjacent(a, b); }
  bool ambiguous(int x, int mid, int y) const {
    return ambiguous_.count({std::min(x, y), mid, std::max(x, y)}) != 0;
  }
  bool in_sepset(int x, int y, int v) const {
    auto it = sepsets_.find(std::minmax(x, y));
    if (it == sepsets_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
  }
  bool directed(int a, int b) const { return adj(a, b) && at(b, a) == kTail && at(a, b) == kArrow; }
  bool set(int from, int on, Mark m) {
    if (at(from, on) == m) return false;
    g_.set_mark(from, on, m);
    return true;
  }

  // alpha *-> beta o-* gamma, alpha and gamma non-adjacent  =>  beta -> gamma
  bool rule1() {
    bool changed = false;
    for (int beta = 0; beta < n_; ++beta) {
      for (int alpha = 0; alpha < n_; ++alpha) {
        if (!adj(alpha, beta) || at(alpha, beta) != kArrow) continue;
        for (int gamma = 0; gamma < n_; ++gamma) {
          if (gamma == alpha || !adj(beta, gamma) || adj(alpha, gamma)) continue;
          if (at(gamma, beta) != kCircle || ambiguous(alpha, beta, gamma)) continue;
          changed |= set(gamma, beta, kTail);
          changed |= set(beta, gamma, kArrow);
        }
      }
    }
    return changed;
  }

  // alpha -> beta *-> gamma or alpha *-> beta -> gamma, with alpha *-o gamma  =>  alpha *-> gamma
  bool rule2() {
    bool changed = false;
    for (int alpha = 0; alpha < n_; ++alpha) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!adj(alpha, gamma) || at(alpha, gamma) != kCircle) continue;
        for (int beta = 0; beta < n_; ++beta) {
          if (beta == alpha || beta == gamma || !adj(alpha, beta) || !adj(beta, gamma)) continue;
          const bool first = directed(alpha, beta) && at(beta, gamma) == kArrow;
          const bool second = at(alpha, beta) == kArrow && directed(beta, gamma);
          if (first || second) {
            changed |= set(alpha, gamma, kArrow);
            break;
          }
        }
      }
    }
    return changed;
  }

  // alpha *-> beta <-* gamma, alpha *-o theta o-* gamma, alpha/gamma non-adjacent,
  // theta *-o beta  =>  theta *-> beta
  bool rule3() {
    bool changed = false;
    for (int theta = 0; theta < n_; ++theta) {
      for (int beta = 0; beta < n_; ++beta) {
        if (!adj(theta, beta) || at(theta, beta) != kCircle) continue;
        bool fire = false;
        for (int alpha = 0; alpha < n_ && !fire; ++alpha) {
          if (alpha == theta || alpha == beta || !adj(alpha, beta) || !adj(alpha, theta)) continue;
          if (at(alpha, beta) != kArrow || at(alpha, theta) != kCircle) continue;
          for (int gamma = alpha + 1; gamma < n_; ++gamma) {
            if (gamma == theta || gamma == beta || !adj(gamma, beta) || !adj(gamma, theta)) continue;
            if (adj(alpha, gamma) || at(gamma, beta) != kArrow || at(gamma, theta) != kCircle) continue;
            if (ambiguous(alpha, theta, gamma)) continue;
            fire = true;
            break;
          }
        }
        if (fire) changed |= set(theta, beta, kArrow);
      }
    }
    return changed;
  }

  // Shortest discriminating path <theta, ..., alpha, beta, gamma> for beta, or empty.
  std::vector<int> discriminating_path(int alpha, int beta, int gamma) const {
    if (alpha == beta || alpha == gamma || !adj(alpha, beta)) return {};
    if (at(beta, alpha) != kArrow || !directed(alpha, gamma)) return {};
    std::vector<int> parent(n_, -1);
    std::vector<bool> seen(n_, false);
    seen[alpha] = seen[beta] = seen[gamma] = true;
    std::deque<int> queue{alpha};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < n_; ++w) {
        if (seen[w] || !adj(w, v) || at(w, v) != kArrow) continue;
        if (!adj(w, gamma)) {
          std::vector<int> path{w};
          for (int u = v; u != -1; u = parent[u]) path.push_back(u);
          path.push_back(beta);
          path.push_back(gamma);
          return path;
        }
        if (at(v, w) == kArrow && directed(w, gamma)) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    return {};
  }

  bool rule4() {
    bool changed = false;
    for (int beta = 0; beta < n_; ++beta) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!adj(beta, gamma) || at(gamma, beta) != kCircle) continue;
        for (int alpha = 0; alpha < n_; ++alpha) {
          const auto path = discriminating_path(alpha, beta, gamma);
          if (path.empty()) continue;
          if (in_sepset(path.front(), gamma, beta)) {
            changed |= set(gamma, beta, kTail);
            changed |= set(beta, gamma, kArrow);
          } else {
            changed |= set(alpha, beta, kArrow);
            changed |= set(gamma, beta, kArrow);
            changed |= set(beta, gamma, kArrow);
          }
          break;
        }
      }
    }
    return changed;
  }

  // alpha o-> gamma: candidates for turning the circle at alpha into a tail.
  bool partially_directed(int alpha, int gamma) const {
    return adj(alpha, gamma) && at(gamma, alpha) == kCircle && at(alpha, gamma) == kArrow;
  }

  // alpha -> beta -> gamma or alpha -o beta -> gamma, with alpha o-> gamma  =>  alpha -> gamma
  bool rule8() {
    bool changed = false;
    for (int alpha = 0; alpha < n_; ++alpha) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!partially_directed(alpha, gamma)) continue;
        for (int beta = 0; beta < n_; ++beta) {
          if (beta == alpha || beta == gamma || !adj(alpha, beta) || !directed(beta, gamma)) continue;
          if (at(beta, alpha) == kTail && (at(alpha, beta) == kArrow || at(alpha, beta) == kCircle)) {
            changed |= set(gamma, alpha, kTail);
            break;
          }
        }
      }
    }
    return changed;
  }

  bool potentially_directed(int a, int b) const {
    if (!adj(a, b)) return false;
    const MarkSet at_a = at(b, a);
    const MarkSet at_b = at(a, b);
    return at_a != kArrow && at_b != kTail;
  }

  // First vertices after `start` of uncovered potentially directed paths to `target`
  // that avoid `forbidden`.
  std::vector<bool> first_steps(int start, int target, int forbidden) const {
    std::vector<bool> out(n_, false);
    std::vector<bool> on_path(n_, false);
    on_path[start] = true;
    if (forbidden >= 0) on_path[forbidden] = true;
    for (int mu = 0; mu < n_; ++mu) {
      if (on_path[mu] || !potentially_directed(start, mu)) continue;
      if (mu == target) {
        out[mu] = true;
        continue;
      }
      on_path[mu] = true;
      if (reach(start, mu, target, on_path)) out[mu] = true;
      on_path[mu] = false;
    }
    return out;
  }

  bool reach(int prev, int cur, int target, std::vector<bool>& on_path) const {
    for (int next = 0; next < n_; ++next) {
      if (next == prev || !potentially_directed(cur, next) || adj(prev, next)) continue;
      if (next == target) return true;
      if (on_path[next]) continue;
      on_path[next] = true;
      const bool found = reach(cur, next, target, on_path);
      on_path[next] = false;
      if (found) return true;
    }
    return false;
  }

  // alpha o-> gamma with an uncovered p.d. path <alpha, beta, ..., gamma>, beta and
  // gamma non-adjacent  =>  alpha -> gamma
  bool rule9() {
    bool changed = false;
    for (int alpha = 0; alpha < n_; ++alpha) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!partially_directed(alpha, gamma)) continue;
        const auto firsts = first_steps(alpha, gamma, -1);
        for (int beta = 0; beta < n_; ++beta) {
          if (beta != gamma && firsts[beta] && !adj(beta, gamma)) {
            changed |= set(gamma, alpha, kTail);
            break;
          }
        }
      }
    }
    return changed;
  }

  // alpha o-> gamma, beta -> gamma <- theta, uncovered p.d. paths from alpha to beta
  // and theta leaving alpha through distinct non-adjacent vertices  =>  alpha -> gamma
  bool rule10() {
    bool changed = false;
    for (int alpha = 0; alpha < n_; ++alpha) {
      for (int gamma = 0; gamma < n_; ++gamma) {
        if (!partially_directed(alpha, gamma)) continue;
        std::vector<int> into_gamma;
        for (int v = 0; v < n_; ++v) {
          if (v != alpha && directed(v, gamma)) into_gamma.push_back(v);
        }
        bool fire = false;
        for (std::size_t i = 0; i < into_gamma.size() && !fire; ++i) {
          const auto f1 = first_steps(alpha, into_gamma[i], -1);
          for (std::size_t j = i + 1; j < into_gamma.size() && !fire; ++j) {
            const auto f2 = first_steps(alpha, into_gamma[j], -1);
            for (int mu = 0; mu < n_ && !fire; ++mu) {
              if (!f1[mu]) continue;
              for (int omega = 0; omega < n_; ++omega) {
                if (f2[omega] && mu != omega && !adj(mu, omega)) {
                  fire = true;
                  break;
                }
              }
            }
          }
        }
        if (fire) changed |= set(gamma, alpha, kTail);
      }
    }
    return changed;
  }

  MixedGraph& g_;
  const std::map<std::pair<int, int>, std::vector<int>>& sepsets_;
  const Ambiguous& ambiguous_;
  int n_;
};

}  // namespace

void orient_pag(MixedGraph& pag, const std::map<std::pair<int, int>, std::vector<int>>& sepsets,
                const Ambiguous& ambiguous, std::vector<DiscriminatingRecord>& discriminating) {
  Orienter orienter(pag, sepsets, ambiguous);
  orienter.run();
  orienter.harvest(discriminating);
}

}  // namespace mosaic::detail
