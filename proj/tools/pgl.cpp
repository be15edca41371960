#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgl/bench.hpp"
#include "pgl/bigint.hpp"
#include "pgl/eigenspace.hpp"
#include "pgl/errors.hpp"
#include "pgl/fock.hpp"
#include "pgl/instance.hpp"
#include "pgl/solvers.hpp"
#include "pgl/thermo.hpp"

namespace {

using nlohmann::ordered_json;

// Shared instance source: an input file, or a generated (n, bits, seed) cell.
struct InstanceArgs {
  std::string input_path;
  std::uint32_t n = 0;
  unsigned bits = 16;
  std::uint64_t seed = 1;
};

void add_instance_options(CLI::App& cmd, InstanceArgs& args) {
  auto* input = cmd.add_option("--input", args.input_path,
                               "instance file (text weights or the JSON form)");
  auto* n = cmd.add_option("--n", args.n, "generate a random instance with this many weights");
  cmd.add_option("--bits", args.bits, "bit width of generated weights")->default_val(16u);
  cmd.add_option("--seed", args.seed, "seed for the generated instance")->default_val(1ull);
  input->excludes(n);
  n->excludes(input);
}

pgl::Instance resolve_instance(const InstanceArgs& args) {
  if (!args.input_path.empty()) return pgl::load_instance_file(args.input_path);
  if (args.n == 0) {
    throw pgl::ValidationError("no instance given: pass --input FILE or --n COUNT");
  }
  return pgl::generate_instance(args.n, args.bits, args.seed);
}

pgl::SolverCaps caps_from_env() {
  pgl::SolverCaps caps;
  if (const char* raw = std::getenv("PGL_BRUTE_CAP")) {
    std::string text(raw);
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
      throw pgl::ValidationError("PGL_BRUTE_CAP must be a nonnegative integer, got '" + text +
                                 "'");
    }
    caps.brute_force_cap = static_cast<std::uint32_t>(std::stoul(text));
  }
  return caps;
}

// Every stream the tool writes goes through here: stdout by default, a file
// when --out (or a sibling flag) names one.
void write_document(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pgl::ValidationError("cannot open '" + path + "' for writing");
  }
  out << content;
}

std::vector<double> parse_beta_list(const std::string& text) {
  std::vector<double> betas;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) {
      throw pgl::ValidationError("empty entry in --betas list");
    }
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw pgl::ValidationError("invalid beta '" + item + "'");
    }
    if (used != item.size()) {
      throw pgl::ValidationError("invalid beta '" + item + "'");
    }
    betas.push_back(value);
  }
  if (betas.empty()) {
    throw pgl::ValidationError("--betas needs at least one value");
  }
  return betas;
}

ordered_json json_indices(const pgl::SubsetAssignment& subset) {
  ordered_json arr = ordered_json::array();
  for (std::uint32_t index : subset.indices()) arr.push_back(index);
  return arr;
}

int run_solve(const InstanceArgs& inst_args, const std::string& solver,
              const std::optional<std::uint64_t>& max_nodes,
              const std::optional<double>& max_seconds, const std::string& out_path) {
  if (!pgl::is_solver_name(solver)) {
    throw pgl::ValidationError("unknown solver '" + solver +
                               "'; expected brute, hs, ss, kk, or ckk");
  }
  const bool budgeted = max_nodes.has_value() || max_seconds.has_value();
  if (budgeted && solver != "ckk") {
    throw pgl::ValidationError("--max-nodes/--max-seconds apply to the anytime solver (ckk) only");
  }
  pgl::SolverBudget budget;
  budget.max_nodes = max_nodes;
  budget.max_seconds = max_seconds;

  const pgl::Instance instance = resolve_instance(inst_args);
  const pgl::SolveResult result = pgl::solve_by_name(solver, instance, budget, caps_from_env());

  ordered_json doc;
  doc["command"] = "solve";
  doc["solver"] = solver;
  doc["label"] = instance.label();
  doc["n"] = instance.size();
  doc["optimal_energy"] = pgl::to_decimal(result.optimal_energy);
  doc["discrepancy"] = pgl::to_decimal(result.discrepancy);
  doc["witness"] = json_indices(result.witness);
  doc["spins"] = result.witness.spin_string(instance.size());
  doc["exact"] = result.exact;
  doc["stats"]["nodes_expanded"] = result.stats.nodes_expanded;
  doc["stats"]["peak_list_size"] = result.stats.peak_list_size;
  doc["stats"]["elapsed_s"] = result.stats.elapsed_seconds;
  write_document(out_path, doc.dump(2) + "\n");

  return (budgeted && !result.exact) ? pgl::kExitBudgetExhausted : pgl::kExitOk;
}

int run_eigenspace(const InstanceArgs& inst_args, std::uint64_t limit,
                   const std::string& out_path) {
  const pgl::Instance instance = resolve_instance(inst_args);
  const pgl::GroundEigenspace space =
      pgl::enumerate_ground_configurations(instance, limit, caps_from_env());

  ordered_json doc;
  doc["command"] = "eigenspace";
  doc["label"] = instance.label();
  doc["n"] = instance.size();
  doc["optimal_energy"] = pgl::to_decimal(space.optimal_energy);
  doc["total_count"] = space.total_count;
  doc["truncated"] = space.truncated;
  doc["configurations"] = ordered_json::array();
  for (const pgl::SubsetAssignment& subset : space.configurations) {
    doc["configurations"].push_back(json_indices(subset));
  }
  if (space.truncated) {
    doc["state_vector"] = nullptr;  // no normalized vector over a partial list
  } else {
    const pgl::StateVectorDescription vec = pgl::ground_state_vector(space, instance.size());
    doc["state_vector"]["dimension"] = vec.dimension;
    doc["state_vector"]["amplitude"] = vec.amplitude;
    doc["state_vector"]["basis_labels"] = vec.basis_labels;
  }
  write_document(out_path, doc.dump(2) + "\n");
  return pgl::kExitOk;
}

int run_thermo(const InstanceArgs& inst_args, const std::string& betas_text,
               const std::string& out_path) {
  const pgl::Instance instance = resolve_instance(inst_args);
  const std::vector<double> betas = parse_beta_list(betas_text);
  const std::vector<pgl::EnsembleReport> reports =
      pgl::beta_sweep(instance, betas, caps_from_env());
  std::ostringstream csv;
  pgl::write_sweep_csv(reports, csv);
  write_document(out_path, csv.str());
  return pgl::kExitOk;
}

ordered_json json_triple(const pgl::FockTriple& state) {
  return ordered_json::array(
      {pgl::to_decimal(state.n1), pgl::to_decimal(state.n2), pgl::to_decimal(state.n3)});
}

int run_fock(std::uint64_t total, const std::string& out_path) {
  const pgl::EigenspaceDecomposition decomposition = pgl::decompose_eigenspace(total);
  ordered_json doc;
  doc["command"] = "fock";
  doc["total_particles"] = decomposition.total_particles;
  doc["vacuum_present"] = decomposition.vacuum_present;
  doc["fibonacci"] = ordered_json::array();
  for (const pgl::FockTriple& s : decomposition.fibonacci_states) {
    doc["fibonacci"].push_back(json_triple(s));
  }
  doc["non_fibonacci"] = ordered_json::array();
  for (const pgl::FockTriple& s : decomposition.non_fibonacci_states) {
    doc["non_fibonacci"].push_back(json_triple(s));
  }
  write_document(out_path, doc.dump(2) + "\n");
  return pgl::kExitOk;
}

int run_fib(const std::string& n_text, const std::string& out_path) {
  const pgl::Int n = pgl::parse_decimal(n_text);
  const pgl::BinetResult result = pgl::fib_binet_test(n);
  ordered_json doc;
  doc["command"] = "fib";
  doc["n"] = pgl::to_decimal(n);
  doc["is_fibonacci"] = result.is_fibonacci;
  doc["method"] = "binet";
  doc["convergent"]["k"] = result.convergent_used.k;
  doc["convergent"]["p"] = pgl::to_decimal(result.convergent_used.p);
  doc["convergent"]["q"] = pgl::to_decimal(result.convergent_used.q);
  write_document(out_path, doc.dump(2) + "\n");
  return pgl::kExitOk;
}

int run_bench(const std::vector<std::string>& solvers, const std::vector<std::uint32_t>& sizes,
              unsigned bits, std::uint32_t seeds, double time_cap, const std::string& out_path,
              const std::string& fit_path) {
  pgl::BenchConfig config;
  config.solver_names = solvers;
  config.n_values = sizes;
  config.bits = bits;
  config.seeds_per_n = seeds;
  config.time_cap_seconds = time_cap;

  const pgl::BenchReport report = pgl::run_scaling(config, caps_from_env());
  std::ostringstream csv;
  pgl::write_bench_csv(report, csv);
  write_document(out_path, csv.str());
  std::ostringstream fits;
  pgl::write_fit_json(report, fits);
  write_document(fit_path, fits.str());
  return pgl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-way partitioning lab: exact and heuristic solvers, ground-space "
               "enumeration, Boltzmann sweeps, occupation-number decompositions, and "
               "scaling benchmarks"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "minimize the squared partition discrepancy");
  InstanceArgs solve_inst;
  add_instance_options(*solve_cmd, solve_inst);
  std::string solver_name;
  solve_cmd->add_option("--solver", solver_name, "brute, hs, ss, kk, or ckk")->required();
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  solve_cmd->add_option("--max-nodes", max_nodes, "leaf budget for the anytime solver");
  solve_cmd->add_option("--max-seconds", max_seconds, "time budget for the anytime solver");
  std::string solve_out;
  solve_cmd->add_option("--out", solve_out, "output path (default: standard output)");

  // eigenspace
  auto* eig_cmd = app.add_subcommand("eigenspace", "enumerate every optimal configuration");
  InstanceArgs eig_inst;
  add_instance_options(*eig_cmd, eig_inst);
  std::uint64_t limit = 65536;
  eig_cmd->add_option("--limit", limit, "maximum configurations to list")->default_val(65536ull);
  std::string eig_out;
  eig_cmd->add_option("--out", eig_out, "output path (default: standard output)");

  // thermo
  auto* thermo_cmd = app.add_subcommand("thermo", "ensemble averages across a beta sweep");
  InstanceArgs thermo_inst;
  add_instance_options(*thermo_cmd, thermo_inst);
  std::string betas_text;
  thermo_cmd->add_option("--betas", betas_text, "comma separated ascending inverse temperatures")
      ->required();
  std::string thermo_out;
  thermo_cmd->add_option("--out", thermo_out, "output path (default: standard output)");

  // fock
  auto* fock_cmd = app.add_subcommand("fock", "zero-energy occupation triples at fixed total");
  std::uint64_t total = 0;
  fock_cmd->add_option("--total", total, "total particle number")->required();
  std::string fock_out;
  fock_cmd->add_option("--out", fock_out, "output path (default: standard output)");

  // fib
  auto* fib_cmd = app.add_subcommand("fib", "sequence membership via the convergent window test");
  std::string fib_n;
  fib_cmd->add_option("--n", fib_n, "the number to test, as a decimal string")->required();
  std::string fib_out;
  fib_cmd->add_option("--out", fib_out, "output path (default: standard output)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "time/space scaling across instance sizes");
  std::vector<std::string> bench_solvers;
  bench_cmd->add_option("--solver", bench_solvers, "solver to measure (repeatable)")->required();
  std::vector<std::uint32_t> bench_sizes;
  bench_cmd->add_option("--n", bench_sizes, "instance size to measure (repeatable, ascending)")
      ->required();
  unsigned bench_bits = 48;
  bench_cmd->add_option("--bits", bench_bits, "bit width of generated weights")->default_val(48u);
  std::uint32_t bench_seeds = 3;
  bench_cmd->add_option("--seeds", bench_seeds, "seeds per size")->default_val(3u);
  double bench_cap = 60.0;
  bench_cmd->add_option("--time-cap", bench_cap, "seconds allowed per run")->default_val(60.0);
  std::string bench_out;
  bench_cmd->add_option("--out", bench_out, "CSV path (default: standard output)");
  std::string bench_fit_out;
  bench_cmd->add_option("--fit-out", bench_fit_out, "fit summary path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pgl::kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_inst, solver_name, max_nodes, max_seconds, solve_out);
    }
    if (eig_cmd->parsed()) {
      return run_eigenspace(eig_inst, limit, eig_out);
    }
    if (thermo_cmd->parsed()) {
      return run_thermo(thermo_inst, betas_text, thermo_out);
    }
    if (fock_cmd->parsed()) {
      return run_fock(total, fock_out);
    }
    if (fib_cmd->parsed()) {
      return run_fib(fib_n, fib_out);
    }
    if (bench_cmd->parsed()) {
      return run_bench(bench_solvers, bench_sizes, bench_bits, bench_seeds, bench_cap, bench_out,
                       bench_fit_out);
    }
    std::cerr << "error: no subcommand\n";
    return pgl::kExitUsage;
  } catch (const pgl::CapRefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return pgl::kExitCapRefusal;
  } catch (const pgl::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pgl::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
