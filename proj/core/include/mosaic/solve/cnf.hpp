#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mosaic {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = int;
using Clause = std::vector<Lit>;

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int new_var() { return ++num_vars; }
  /// Throws InputError for literal 0 or variables beyond num_vars.
  void add(Clause clause);
};

void write_dimacs(const Cnf& cnf, std::ostream& out, const std::vector<std::string>& comments = {});
void write_dimacs(const Cnf& cnf, const std::filesystem::path& path,
                  const std::vector<std::string>& comments = {});
Cnf read_dimacs(std::istream& in);
Cnf read_dimacs(const std::filesystem::path& path);

}  // namespace mosaic
