#include "mosaic/solve/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mosaic/errors.hpp"
#include "mosaic/solve/sat.hpp"

namespace mosaic {

void Cnf::add(Clause clause) {
  for (Lit l : clause) {
    if (l == 0 || std::abs(l) > num_vars) {
      throw InputError("literal " + std::to_string(l) + " outside 1.." + std::to_string(num_vars));
    }
  }
  clauses.push_back(std::move(clause));
}

void write_dimacs(const Cnf& cnf, std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (Lit l : clause) out << l << ' ';
    out << "0\n";
  }
}

void write_dimacs(const Cnf& cnf, const std::filesystem::path& path,
                  const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_dimacs(cnf, out, comments);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Cnf read_dimacs(std::istream& in) {
  Cnf cnf;
  bool header = false;
  std::size_t declared = 0;
  Clause current;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first) || first == "c" || first[0] == 'c' || first == "%") continue;
    if (first == "p") {
      std::string fmt;
      if (!(ss >> fmt >> cnf.num_vars >> declared) || fmt != "cnf" || cnf.num_vars < 0) {
        throw InputError("malformed DIMACS header '" + line + "'");
      }
      header = true;
      continue;
    }
    if (!header) throw InputError("DIMACS clause before 'p cnf' header");
    std::istringstream body(line);
    long long v = 0;
    while (body >> v) {
      if (v == 0) {
        cnf.add(std::move(current));
        current.clear();
      } else {
        if (v > cnf.num_vars || -v > cnf.num_vars) {
          throw InputError("DIMACS literal " + std::to_string(v) + " exceeds declared variables");
        }
        current.push_back(static_cast<Lit>(v));
      }
    }
    if (!body.eof()) throw InputError("malformed DIMACS clause line '" + line + "'");
  }
  if (!header) throw InputError("missing 'p cnf' header");
  if (!current.empty()) cnf.add(std::move(current));
  if (cnf.clauses.size() != declared) {
    throw InputError("DIMACS header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

Cnf read_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_dimacs(in);
}

void SatBackend::add_cnf(const Cnf& cnf) {
  for (const auto& c : cnf.clauses) add_clause(c);
}

SatCheck check_sat(const Cnf& cnf, const std::vector<Lit>& assumptions) {
  CdclSolver solver(cnf);
  for (Lit a : assumptions) {
    if (a == 0 || std::abs(a) > cnf.num_vars) {
      throw InputError("assumption literal " + std::to_string(a) + " outside 1.." +
                       std::to_string(cnf.num_vars));
    }
  }
  SatCheck out{solver.solve(assumptions), {}};
  if (out.result == SatResult::Sat) {
    out.model.assign(static_cast<std::size_t>(cnf.num_vars) + 1, false);
    for (int v = 1; v <= cnf.num_vars; ++v) out.model[v] = solver.model_value(v);
  }
  return out;
}

}  // namespace mosaic
