#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "mosaic/errors.hpp"
#include "mosaic/solve/sat.hpp"

namespace mosaic {

ExternalSolver::ExternalSolver(std::string command) : command_(std::move(command)) {
  if (command_.empty()) throw InputError("external solver command is empty");
}

void ExternalSolver::add_clause(const Clause& clause) {
  for (Lit l : clause) {
    if (l == 0) throw InputError("literal 0 inside a clause");
    if (std::abs(l) > cnf_.num_vars) cnf_.num_vars = std::abs(l);
  }
  cnf_.clauses.push_back(clause);
}

SatCheck parse_solver_output(const std::string& text, int num_vars) {
  std::istringstream in(text);
  std::string line;
  bool decided = false;
  SatCheck out{SatResult::Unsat, {}};
  std::vector<bool> model(static_cast<std::size_t>(num_vars) + 1, false);
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "s") ss >> tok;
    if (tok == "UNSAT" || tok == "UNSATISFIABLE") {
      out.result = SatResult::Unsat;
      decided = true;
      continue;
    }
    if (tok == "SAT" || tok == "SATISFIABLE") {
      out.result = SatResult::Sat;
      decided = true;
      continue;
    }
    std::istringstream values(tok == "v" ? line.substr(line.find('v') + 1) : line);
    long long lit = 0;
    while (values >> lit) {
      if (lit == 0) continue;
      const long long var = lit < 0 ? -lit : lit;
      if (var > num_vars) throw IoError("solver model mentions unknown variable " + std::to_string(var));
      model[static_cast<std::size_t>(var)] = lit > 0;
    }
  }
  if (!decided) throw IoError("solver output has no SAT/UNSAT verdict");
  if (out.result == SatResult::Sat) out.model = std::move(model);
  return out;
}

SatResult ExternalSolver::solve(const std::vector<Lit>& assumptions) {
  ++calls_;
  Cnf query = cnf_;
  for (Lit a : assumptions) {
    if (a == 0) throw InputError("assumption literal 0");
    if (std::abs(a) > query.num_vars) query.num_vars = std::abs(a);
    query.clauses.push_back({a});
  }
  const auto path = std::filesystem::temp_directory_path() /
                    ("mosaic-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
                     std::to_string(calls_) + ".cnf");
  write_dimacs(query, path);
  const std::string cmd = command_ + " '" + path.string() + "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw IoError("cannot start external solver '" + command_ + "'");
  }
  std::string output;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
  pclose(pipe);
  std::filesystem::remove(path);
  SatCheck check = parse_solver_output(output, query.num_vars);
  model_ = std::move(check.model);
  return check.result;
}

bool ExternalSolver::model_value(int var) const {
  if (var < 1 || static_cast<std::size_t>(var) >= model_.size()) {
    throw PreconditionError("no model value for variable " + std::to_string(var));
  }
  return model_[static_cast<std::size_t>(var)];
}

}  // namespace mosaic
