#include <fstream>
#include <ostream>

#include <json.hpp>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/errors.hpp"

namespace mosaic {

void export_dimacs(const CnfProblem& problem, std::ostream& out) {
  std::vector<std::string> comments;
  for (int var : problem.core_vars()) {
    comments.push_back(std::to_string(var) + " " + problem.registry.describe(var));
  }
  write_dimacs(problem.cnf, out, comments);
}

std::string variables_json(const CnfProblem& problem, int indent) {
  nlohmann::json vars = nlohmann::json::array();
  const auto& names = problem.registry.names();
  for (int var = 1; var <= problem.registry.size(); ++var) {
    const Atom& atom = problem.registry.atom(var);
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId n : atom.nodes) nodes.push_back(names.at(n));
    vars.push_back({{"id", var},
                    {"atom", problem.registry.describe(var)},
                    {"kind", to_string(atom.kind)},
                    {"nodes", nodes},
                    {"context", atom.context}});
  }
  return nlohmann::json{{"variables", vars}}.dump(indent);
}

std::string soft_literals_json(const std::vector<SoftLiteral>& literals, int indent) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : literals) {
    out.push_back({{"kind", to_string(l.kind)},
                   {"dataset", l.dataset},
                   {"nodes", l.nodes},
                   {"literal", l.lit},
                   {"p", l.p},
                   {"score", l.score}});
  }
  return out.dump(indent);
}

void export_problem(const CnfProblem& problem, const std::filesystem::path& stem) {
  const auto with = [&](const char* ext) {
    auto p = stem;
    p += ext;
    return p;
  };
  {
    std::ofstream out(with(".cnf"));
    if (!out) throw IoError("cannot write " + with(".cnf").string());
    export_dimacs(problem, out);
  }
  for (const auto& [ext, text] : {std::pair{".vars.json", variables_json(problem)},
                                  std::pair{".soft.json", soft_literals_json(problem.soft)}}) {
    std::ofstream out(with(ext));
    if (!out) throw IoError("cannot write " + with(ext).string());
    out << text << '\n';
  }
}

}  // namespace mosaic
