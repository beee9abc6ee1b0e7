#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/encode/search_graph.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/graph/serialize.hpp"
#include "mosaic/pipeline/pipeline.hpp"
#include "mosaic/simulate/generator.hpp"
#include "mosaic/solve/backbone.hpp"
#include "mosaic/stats/pvalue_cache.hpp"

namespace {

using namespace mosaic;

struct RunOptions {
  std::string manifest;
  std::string oracle_graph;
  double alpha = 0.1;
  int max_k = 5;
  int mpl = 3;
  std::string test = "fisher_z";
  std::string strategy = "mmr";
  bool pds = true;
  std::uint64_t seed = 0;
  bool exact_ancestry = false;

  RunConfig config() const {
    RunConfig c;
    c.alpha = alpha;
    c.max_k = max_k;
    c.mpl = mpl > 0 ? std::optional<int>(mpl) : std::nullopt;
    c.test = test;
    c.strategy = strategy_from_string(strategy);
    c.pds = pds;
    c.seed = seed;
    c.exact_ancestry = exact_ancestry;
    return c;
  }
};

void add_run_options(CLI::App& app, RunOptions& o) {
  app.add_option("--manifest", o.manifest, "JSON manifest of datasets");
  app.add_option("--oracle-graph", o.oracle_graph, "graph JSON answering CI queries for oracle manifests");
  app.add_option("--alpha", o.alpha, "significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  app.add_option("--max-k", o.max_k, "largest conditioning set")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--mpl", o.mpl, "maximum path length, 0 for unbounded")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--test", o.test, "fisher_z or g2")->capture_default_str()->check(CLI::IsMember({"fisher_z", "g2"}));
  app.add_option("--strategy", o.strategy, "mmr or none")->capture_default_str()->check(CLI::IsMember({"mmr", "none"}));
  app.add_option("--pds", o.pds, "run the possible-d-sep stage")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_flag("--exact-ancestry", o.exact_ancestry, "encode ancestry by transitive closure");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<FciResult> learn_pags(const RunOptions& o, std::vector<std::vector<std::string>>& targets) {
  if (o.manifest.empty()) throw InputError("--manifest is required");
  const auto entries = read_manifest(o.manifest);
  const RunConfig config = o.config();
  std::vector<std::unique_ptr<CiTest>> owned;
  std::vector<Dataset> datasets;
  MixedGraph oracle;
  if (!o.oracle_graph.empty()) oracle = graph_from_json(slurp(o.oracle_graph));
  for (const auto& e : entries) {
    if (e.csv_path.empty()) {
      if (o.oracle_graph.empty()) throw InputError("oracle manifest entries need --oracle-graph");
      owned.push_back(std::make_unique<MSeparationOracle>(oracle, e.variables, e.intervention_targets));
    } else {
      datasets.push_back(load_dataset(e));
      const Dataset& d = datasets.back();
      owned.push_back(make_test(d.value_kind == ValueKind::Discrete ? "g2" : config.test, d));
    }
    targets.push_back(e.intervention_targets);
  }
  FciOptions options;
  options.alpha = config.alpha;
  options.max_k = config.max_k;
  options.pds = config.pds;
  std::vector<FciResult> pags;
  for (const auto& t : owned) {
    PValueCache cache(*t);
    pags.push_back(run_fci(cache, options));
  }
  return pags;
}

int run_main(const RunOptions& o, const std::string& out_json, const std::string& out_dot,
             const std::string& diagnostics) {
  if (o.manifest.empty()) throw InputError("--manifest is required");
  const RunConfig config = o.config();
  const auto entries = read_manifest(o.manifest);
  MixedGraph oracle;
  if (!o.oracle_graph.empty()) oracle = graph_from_json(slurp(o.oracle_graph));
  const PipelineResult result = run_manifest(entries, config, o.oracle_graph.empty() ? nullptr : &oracle);
  const std::string json = summary_to_json(result.summary);
  if (out_json.empty()) {
    std::cout << json << '\n';
  } else {
    write_text(out_json, json);
  }
  if (!out_dot.empty()) write_text(out_dot, summary_to_dot(result.summary));
  if (!diagnostics.empty()) write_text(diagnostics, result.diagnostics_json(config));
  return 0;
}

int simulate_main(const SimulationConfig& sim, std::uint64_t seed, const std::string& out_dir) {
  const GeneratedStudy study = generate_study(sim, seed);
  write_study(study, out_dir);
  std::cout << "wrote " << study.datasets.size() << " datasets to " << out_dir << '\n';
  return 0;
}

int export_main(const RunOptions& o, const std::string& stem) {
  std::vector<std::vector<std::string>> targets;
  const auto pags = learn_pags(o, targets);
  const MixedGraph h = initialize_search_graph(pags, targets);
  const RunConfig config = o.config();
  const CnfProblem problem = build_constraints(h, pags, targets, {config.mpl, config.exact_ancestry});
  export_problem(problem, stem);
  std::cout << "p cnf " << problem.cnf.num_vars << ' ' << problem.cnf.clauses.size() << '\n';
  return 0;
}

int solve_main(const std::string& cnf_path, bool backbone) {
  const Cnf cnf = read_dimacs(std::filesystem::path(cnf_path));
  const SatCheck check = check_sat(cnf);
  if (check.result == SatResult::Unsat) {
    std::cout << "UNSAT\n";
    return 0;
  }
  std::cout << "SAT\nv";
  for (int v = 1; v <= cnf.num_vars; ++v) std::cout << ' ' << (check.model[v] ? v : -v);
  std::cout << " 0\n";
  if (backbone) {
    std::vector<int> all;
    for (int v = 1; v <= cnf.num_vars; ++v) all.push_back(v);
    const BackboneReport report = compute_backbone(cnf, {}, all);
    for (const auto& [var, pol] : report.polarity) std::cout << "b " << var << ' ' << to_string(pol) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn invariant and variant causal features from overlapping interventional datasets"};
  app.require_subcommand(0, 1);
  RunOptions run;
  std::string out_json, out_dot, diagnostics;
  add_run_options(app, run);
  app.add_option("--out-json", out_json, "summary graph JSON (default: stdout)");
  app.add_option("--out-dot", out_dot, "summary graph in DOT");
  app.add_option("--diagnostics", diagnostics, "diagnostics JSON sidecar");

  auto* simulate = app.add_subcommand("simulate", "generate a random study as CSVs plus a manifest");
  SimulationConfig sim;
  std::uint64_t sim_seed = 1;
  std::string out_dir;
  simulate->add_option("--out-dir", out_dir, "output directory")->required();
  simulate->add_option("--variables", sim.variables)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--max-parents", sim.max_parents)->capture_default_str()->check(CLI::NonNegativeNumber);
  simulate->add_option("--datasets", sim.datasets)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--max-latent", sim.max_latent)->capture_default_str()->check(CLI::NonNegativeNumber);
  simulate->add_option("--max-manipulated", sim.max_manipulated)->capture_default_str()->check(CLI::NonNegativeNumber);
  simulate->add_option("--rows", sim.rows)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed)->capture_default_str();

  auto* export_cnf = app.add_subcommand("export-cnf", "write the constraint problem as DIMACS plus JSON sidecars");
  RunOptions export_run;
  std::string stem;
  add_run_options(*export_cnf, export_run);
  export_cnf->add_option("--out", stem, "output path stem")->required();

  auto* solve = app.add_subcommand("solve", "check a DIMACS file");
  std::string cnf_path;
  bool backbone = false;
  solve->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  solve->add_flag("--backbone", backbone, "also print the backbone");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(ErrorCategory::Input);
  }

  try {
    if (simulate->parsed()) return simulate_main(sim, sim_seed, out_dir);
    if (export_cnf->parsed()) return export_main(export_run, stem);
    if (solve->parsed()) return solve_main(cnf_path, backbone);
    return run_main(run, out_json, out_dot, diagnostics);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.category()) << "): " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << '\n';
    return exit_code(ErrorCategory::Internal);
  }
}
