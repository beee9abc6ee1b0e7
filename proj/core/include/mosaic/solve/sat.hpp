#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mosaic/solve/cnf.hpp"

namespace mosaic {

enum class SatResult { Sat, Unsat };

/// Incremental solver session. Assumptions hold for one call only.
class SatBackend {
 public:
  virtual ~SatBackend() = default;
  virtual void add_clause(const Clause& clause) = 0;
  virtual SatResult solve(const std::vector<Lit>& assumptions = {}) = 0;
  /// Value of `var` in the last model; only meaningful after Sat.
  virtual bool model_value(int var) const = 0;
  virtual int num_vars() const = 0;
  virtual std::uint64_t calls() const = 0;

  void add_cnf(const Cnf& cnf);
};

struct SatStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

/// Conflict-driven clause learning with two watched literals, first-UIP
/// learning, VSIDS, phase saving and Luby restarts.
class CdclSolver : public SatBackend {
 public:
  CdclSolver();
  explicit CdclSolver(const Cnf& cnf);
  ~CdclSolver() override;

  void add_clause(const Clause& clause) override;
  SatResult solve(const std::vector<Lit>& assumptions = {}) override;
  bool model_value(int var) const override;
  int num_vars() const override;
  std::uint64_t calls() const override { return calls_; }
  const SatStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint64_t calls_ = 0;
};

/// Runs `command <cnf-file>` per call. Assumptions are appended as unit
/// clauses. Output must contain "SAT"/"UNSAT" (optionally "s SATISFIABLE"
/// style) and, when satisfiable, the model as signed integers ("v" lines allowed).
class ExternalSolver : public SatBackend {
 public:
  explicit ExternalSolver(std::string command);

  void add_clause(const Clause& clause) override;
  SatResult solve(const std::vector<Lit>& assumptions = {}) override;
  bool model_value(int var) const override;
  int num_vars() const override { return cnf_.num_vars; }
  std::uint64_t calls() const override { return calls_; }

 private:
  std::string command_;
  Cnf cnf_;
  std::vector<bool> model_;
  std::uint64_t calls_ = 0;
};

struct SatCheck {
  SatResult result;
  std::vector<bool> model;  // index = variable, entry 0 unused
};

SatCheck check_sat(const Cnf& cnf, const std::vector<Lit>& assumptions = {});

/// Parses solver output in the format accepted by ExternalSolver.
SatCheck parse_solver_output(const std::string& text, int num_vars);

}  // namespace mosaic
