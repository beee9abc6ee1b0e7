#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mosaic/errors.hpp"
#include "mosaic/solve/sat.hpp"

namespace mosaic {

namespace {

// Internal literal: 2 * var + negated, var is 0-based.
inline int ilit(Lit l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
inline int var_of(int lit) { return lit >> 1; }
inline int neg(int lit) { return lit ^ 1; }

constexpr std::int8_t kUndef = -1;

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

struct ClauseRec {
  std::vector<int> lits;
  double activity = 0.0;
  bool learnt = false;
  bool deleted = false;
};

class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity) : act_(activity) {}

  bool empty() const { return heap_.empty(); }
  bool contains(int v) const { return v < static_cast<int>(pos_.size()) && pos_[v] >= 0; }

  void grow(int n) {
    if (static_cast<int>(pos_.size()) < n) pos_.resize(n, -1);
  }

  void insert(int v) {
    grow(v + 1);
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  void increased(int v) {
    if (contains(v)) up(pos_[v]);
  }

  int pop() {
    const int top = heap_.front();
    swap_at(0, static_cast<int>(heap_.size()) - 1);
    heap_.pop_back();
    pos_[top] = -1;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool better(int a, int b) const { return act_[heap_[a]] > act_[heap_[b]]; }
  void swap_at(int a, int b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a]] = a;
    pos_[heap_[b]] = b;
  }
  void up(int i) {
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!better(i, parent)) break;
      swap_at(i, parent);
      i = parent;
    }
  }
  void down(int i) {
    const int n = static_cast<int>(heap_.size());
    while (true) {
      int best = i;
      const int l = 2 * i + 1;
      const int r = l + 1;
      if (l < n && better(l, best)) best = l;
      if (r < n && better(r, best)) best = r;
      if (best == i) break;
      swap_at(i, best);
      i = best;
    }
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

}  // namespace

struct CdclSolver::Impl {
  int nvars = 0;
  std::vector<ClauseRec> clauses;
  std::vector<std::vector<int>> watches;  // by literal: clauses watching it
  std::vector<std::int8_t> assigns;       // by var
  std::vector<bool> polarity;             // saved phase, true = positive
  std::vector<int> level;
  std::vector<int> reason;
  std::vector<double> activity;
  std::vector<char> seen;
  std::vector<int> trail;
  std::vector<int> trail_lim;
  std::size_t qhead = 0;
  VarHeap heap{activity};
  double var_inc = 1.0;
  double clause_inc = 1.0;
  bool unsat = false;
  std::size_t learnt_count = 0;
  double max_learnts = 2000;
  std::vector<bool> model;
  SatStats stats;

  void ensure_var(int v) {  // v is 1-based
    if (v <= nvars) return;
    const int old = nvars;
    nvars = v;
    watches.resize(2 * static_cast<std::size_t>(v));
    assigns.resize(v, kUndef);
    polarity.resize(v, false);
    level.resize(v, 0);
    reason.resize(v, -1);
    activity.resize(v, 0.0);
    seen.resize(v, 0);
    heap.grow(v);
    for (int i = old; i < v; ++i) heap.insert(i);
  }

  std::int8_t value(int lit) const {
    const std::int8_t a = assigns[var_of(lit)];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ (lit & 1));
  }

  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  void enqueue(int lit, int from) {
    const int v = var_of(lit);
    assigns[v] = static_cast<std::int8_t>((lit & 1) ? 0 : 1);
    level[v] = decision_level();
    reason[v] = from;
    trail.push_back(lit);
  }

  void backtrack(int target) {
    if (decision_level() <= target) return;
    for (int i = static_cast<int>(trail.size()) - 1; i >= trail_lim[target]; --i) {
      const int v = var_of(trail[i]);
      polarity[v] = assigns[v] == 1;
      assigns[v] = kUndef;
      reason[v] = -1;
      heap.insert(v);
    }
    trail.resize(trail_lim[target]);
    trail_lim.resize(target);
    qhead = trail.size();
  }

  void attach(int ci) {
    const auto& lits = clauses[ci].lits;
    watches[lits[0]].push_back(ci);
    watches[lits[1]].push_back(ci);
  }

  int propagate() {
    int conflict = -1;
    while (qhead < trail.size()) {
      const int false_lit = neg(trail[qhead++]);
      ++stats.propagations;
      auto& ws = watches[false_lit];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const int ci = ws[i++];
        ClauseRec& c = clauses[ci];
        if (c.deleted) continue;
        auto& lits = c.lits;
        if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
        if (value(lits[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (value(lits[k]) != 0) {
            std::swap(lits[1], lits[k]);
            watches[lits[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = ci;
        if (value(lits[0]) == 0) {
          conflict = ci;
          while (i < ws.size()) ws[j++] = ws[i++];
          qhead = trail.size();
        } else {
          enqueue(lits[0], ci);
        }
      }
      ws.resize(j);
      if (conflict >= 0) break;
    }
    return conflict;
  }

  void bump_var(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (auto& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    heap.increased(v);
  }

  void bump_clause(ClauseRec& c) {
    c.activity += clause_inc;
    if (c.activity > 1e20) {
      for (auto& cl : clauses) {
        if (cl.learnt) cl.activity *= 1e-20;
      }
      clause_inc *= 1e-20;
    }
  }

  // First-UIP learning; returns the backjump level and fills `learnt` with the
  // asserting literal first and a literal of the backjump level second.
  int analyze(int conflict, std::vector<int>& learnt) {
    learnt.assign(1, -1);
    int path_count = 0;
    int p = -1;
    int index = static_cast<int>(trail.size()) - 1;
    do {
      ClauseRec& c = clauses[conflict];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        const int q = c.lits[k];
        const int v = var_of(q);
        if (seen[v] || level[v] == 0) continue;
        seen[v] = 1;
        bump_var(v);
        if (level[v] >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
      while (!seen[var_of(trail[index])]) --index;
      p = trail[index--];
      conflict = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path_count;
    } while (path_count > 0);
    learnt[0] = neg(p);

    // drop literals implied by the rest of the clause (local minimization)
    const std::vector<int> original = learnt;
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      const int v = var_of(learnt[k]);
      const int r = reason[v];
      bool redundant = r >= 0;
      if (redundant) {
        for (std::size_t m = 1; m < clauses[r].lits.size(); ++m) {
          const int u = var_of(clauses[r].lits[m]);
          if (!seen[u] && level[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[keep++] = learnt[k];
    }
    for (std::size_t k = 1; k < original.size(); ++k) seen[var_of(original[k])] = 0;
    learnt.resize(keep);

    int back = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k) {
        if (level[var_of(learnt[k])] > level[var_of(learnt[best])]) best = k;
      }
      std::swap(learnt[1], learnt[best]);
      back = level[var_of(learnt[1])];
    }
    return back;
  }

  bool locked(int ci) const {
    const auto& c = clauses[ci];
    const int v = var_of(c.lits[0]);
    return reason[v] == ci && value(c.lits[0]) == 1;
  }

  void reduce_db() {
    std::vector<int> learnts;
    for (int ci = 0; ci < static_cast<int>(clauses.size()); ++ci) {
      if (clauses[ci].learnt && !clauses[ci].deleted) learnts.push_back(ci);
    }
    std::sort(learnts.begin(), learnts.end(),
              [&](int a, int b) { return clauses[a].activity < clauses[b].activity; });
    const std::size_t half = learnts.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
      ClauseRec& c = clauses[learnts[k]];
      if (c.lits.size() <= 2 || locked(learnts[k])) continue;
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      --learnt_count;
    }
  }

  int pick_branch() {
    while (!heap.empty()) {
      const int v = heap.pop();
      if (assigns[v] == kUndef) {
        ++stats.decisions;
        return 2 * v + (polarity[v] ? 0 : 1);
      }
    }
    return -1;
  }

  void add_clause(const Clause& input) {
    if (unsat) return;
    backtrack(0);
    std::vector<int> lits;
    for (Lit l : input) {
      if (l == 0) throw InputError("literal 0 inside a clause");
      ensure_var(std::abs(l));
      lits.push_back(ilit(l));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t keep = 0;
    for (std::size_t k = 0; k < lits.size(); ++k) {
      if (k + 1 < lits.size() && lits[k + 1] == neg(lits[k])) return;  // tautology
      const std::int8_t val = value(lits[k]);
      if (val == 1) return;
      if (val == 0) continue;
      lits[keep++] = lits[k];
    }
    lits.resize(keep);
    if (lits.empty()) {
      unsat = true;
      return;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], -1);
      if (propagate() >= 0) unsat = true;
      return;
    }
    clauses.push_back({std::move(lits), 0.0, false, false});
    attach(static_cast<int>(clauses.size()) - 1);
  }

  SatResult solve(const std::vector<Lit>& assumptions_in) {
    model.clear();
    if (unsat) return SatResult::Unsat;
    std::vector<int> assumptions;
    for (Lit a : assumptions_in) {
      if (a == 0) throw InputError("assumption literal 0");
      ensure_var(std::abs(a));
      assumptions.push_back(ilit(a));
    }
    backtrack(0);
    if (propagate() >= 0) {
      unsat = true;
      return SatResult::Unsat;
    }
    int restart_round = 0;
    std::uint64_t conflicts_left = static_cast<std::uint64_t>(luby(2, restart_round) * 100);
    std::vector<int> learnt;
    while (true) {
      const int conflict = propagate();
      if (conflict >= 0) {
        ++stats.conflicts;
        if (decision_level() == 0) {
          unsat = true;
          return SatResult::Unsat;
        }
        const int back = analyze(conflict, learnt);
        backtrack(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          clauses.push_back({learnt, 0.0, true, false});
          const int ci = static_cast<int>(clauses.size()) - 1;
          bump_clause(clauses[ci]);
          attach(ci);
          ++learnt_count;
          enqueue(learnt[0], ci);
        }
        var_inc /= 0.95;
        clause_inc /= 0.999;
        if (conflicts_left > 0) --conflicts_left;
        continue;
      }
      if (conflicts_left == 0) {
        ++stats.restarts;
        backtrack(0);
        conflicts_left = static_cast<std::uint64_t>(luby(2, ++restart_round) * 100);
        continue;
      }
      if (static_cast<double>(learnt_count) >= max_learnts + static_cast<double>(trail.size())) {
        reduce_db();
        max_learnts *= 1.1;
      }
      int next = -1;
      while (decision_level() < static_cast<int>(assumptions.size())) {
        const int a = assumptions[decision_level()];
        const std::int8_t val = value(a);
        if (val == 1) {
          trail_lim.push_back(static_cast<int>(trail.size()));
        } else if (val == 0) {
          backtrack(0);
          return SatResult::Unsat;
        } else {
          next = a;
          break;
        }
      }
      if (next == -1) {
        next = pick_branch();
        if (next == -1) {
          model.assign(nvars, false);
          for (int v = 0; v < nvars; ++v) model[v] = assigns[v] == 1;
          backtrack(0);
          return SatResult::Sat;
        }
      }
      trail_lim.push_back(static_cast<int>(trail.size()));
      enqueue(next, -1);
    }
  }
};

CdclSolver::CdclSolver() : impl_(std::make_unique<Impl>()) {}

CdclSolver::CdclSolver(const Cnf& cnf) : CdclSolver() {
  impl_->ensure_var(cnf.num_vars);
  add_cnf(cnf);
}

CdclSolver::~CdclSolver() = default;

void CdclSolver::add_clause(const Clause& clause) { impl_->add_clause(clause); }

SatResult CdclSolver::solve(const std::vector<Lit>& assumptions) {
  ++calls_;
  return impl_->solve(assumptions);
}

bool CdclSolver::model_value(int var) const {
  if (var < 1 || var > static_cast<int>(impl_->model.size())) {
    throw PreconditionError("no model value for variable " + std::to_string(var));
  }
  return impl_->model[var - 1];
}

int CdclSolver::num_vars() const { return impl_->nvars; }

const SatStats& CdclSolver::stats() const { return impl_->stats; }

}  // namespace mosaic
