#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgl/bigint.hpp"
#include "pgl/solvers.hpp"

namespace pgl {

struct BenchConfig {
  std::vector<std::string> solver_names;
  std::vector<std::uint32_t> n_values;
  unsigned bits = 48;          // hard regime: weights comparable to 2^N
  std::uint32_t seeds_per_n = 3;
  double time_cap_seconds = 60.0;
};

struct BenchRow {
  std::string solver;
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t peak_list_size = 0;
  Int energy;
  bool completed = false;  // finished within the cap (and exactly, for anytime solvers)
  bool exact = false;
};

struct FitSummary {
  std::string solver;
  double time_slope = 0.0;        // least squares on (n, log2 median elapsed)
  double time_residual_rms = 0.0;
  bool space_slope_defined = false;
  double space_slope = 0.0;       // same fit on log2 median peak_list_size
  std::uint32_t levels_used = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  std::vector<FitSummary> fits;
};

// Runs every (solver, n, seed) cell on generate_instance(n, bits, seed),
// seeds 1..seeds_per_n, timing the solve call only. Cells whose solver
// refuses (cap or memory) are skipped; rows past the time cap are kept but
// marked completed = false and excluded from fits. Exact rows for the same
// (n, seed) are checked for consensus on the energy.
BenchReport run_scaling(const BenchConfig& config, const SolverCaps& caps = {});

// Throws ValidationError when fewer than 3 usable levels exist.
FitSummary fit_exponent(const BenchReport& report, const std::string& solver);

// Columns: solver,n,seed,elapsed_s,peak_list_size,energy,completed
void write_bench_csv(const BenchReport& report, std::ostream& out);
void write_fit_json(const BenchReport& report, std::ostream& out);

}  // namespace pgl
