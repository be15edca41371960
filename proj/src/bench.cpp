#include "pgl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "pgl/errors.hpp"
#include "pgl/instance.hpp"

namespace pgl {
namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

// Clocks can report 0 for very fast runs; floor to a nanosecond so the log
// fit stays finite.
double log2_floored(double x) { return std::log2(std::max(x, 1e-9)); }

struct LineFit {
  double slope = 0.0;
  double residual_rms = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

BenchReport run_scaling(const BenchConfig& config, const SolverCaps& caps) {
  if (config.solver_names.empty()) throw ValidationError("no solvers selected");
  for (const std::string& s : config.solver_names) {
    if (!is_solver_name(s)) {
      throw ValidationError("unknown solver '" + s + "'; expected brute, hs, ss, kk, or ckk");
    }
  }
  if (config.n_values.empty()) throw ValidationError("no instance sizes selected");
  for (std::size_t i = 1; i < config.n_values.size(); ++i) {
    if (config.n_values[i - 1] >= config.n_values[i]) {
      throw ValidationError("instance sizes must be strictly ascending");
    }
  }
  if (config.seeds_per_n == 0) throw ValidationError("seeds_per_n must be at least 1");
  if (!(config.time_cap_seconds > 0)) throw ValidationError("the time cap must be positive");

  BenchReport report;
  report.config = config;

  // First exact energy seen per (n, seed); later exact rows must agree.
  std::map<std::pair<std::uint32_t, std::uint64_t>, Int> consensus;

  for (const std::string& solver : config.solver_names) {
    for (std::uint32_t n : config.n_values) {
      for (std::uint64_t seed = 1; seed <= config.seeds_per_n; ++seed) {
        const Instance instance = generate_instance(n, config.bits, seed);
        SolverBudget budget;
        if (solver == "ckk") budget.max_seconds = config.time_cap_seconds;

        BenchRow row;
        row.solver = solver;
        row.n = n;
        row.seed = seed;
        try {
          const auto start = std::chrono::steady_clock::now();
          const SolveResult result = solve_by_name(solver, instance, budget, caps);
          row.elapsed_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          row.peak_list_size = result.stats.peak_list_size;
          row.energy = result.optimal_energy;
          row.exact = result.exact;
          row.completed = row.elapsed_seconds <= config.time_cap_seconds &&
                          (solver == "kk" || result.exact);
        } catch (const CapRefusalError&) {
          continue;  // cell not runnable at this size; not an error
        }

        if (row.exact) {
          const auto key = std::make_pair(n, seed);
          const auto [it, inserted] = consensus.emplace(key, row.energy);
          if (!inserted && it->second != row.energy) {
            throw std::logic_error("exact solvers disagree at n=" + std::to_string(n) +
                                   " seed=" + std::to_string(seed));
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }

  for (const std::string& solver : config.solver_names) {
    try {
      report.fits.push_back(fit_exponent(report, solver));
    } catch (const ValidationError&) {
      // fewer than 3 usable levels; no fit for this solver
    }
  }
  return report;
}

FitSummary fit_exponent(const BenchReport& report, const std::string& solver) {
  std::map<std::uint32_t, std::vector<double>> times;
  std::map<std::uint32_t, std::vector<double>> peaks;
  for (const BenchRow& row : report.rows) {
    if (row.solver != solver || !row.completed) continue;
    times[row.n].push_back(row.elapsed_seconds);
    peaks[row.n].push_back(static_cast<double>(row.peak_list_size));
  }
  if (times.size() < 3) {
    throw ValidationError("solver '" + solver + "' completed only " +
                          std::to_string(times.size()) +
                          " instance sizes; need at least 3 for a fit");
  }

  std::vector<double> xs, ys, zs;
  bool peaks_positive = true;
  for (const auto& [n, values] : times) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(log2_floored(median_of(values)));
    const double peak_median = median_of(peaks[n]);
    if (peak_median <= 0) peaks_positive = false;
    zs.push_back(peaks_positive ? std::log2(peak_median) : 0.0);
  }

  FitSummary fit;
  fit.solver = solver;
  fit.levels_used = static_cast<std::uint32_t>(xs.size());
  const LineFit time_fit = least_squares(xs, ys);
  fit.time_slope = time_fit.slope;
  fit.time_residual_rms = time_fit.residual_rms;
  fit.space_slope_defined = peaks_positive;
  if (peaks_positive) {
    fit.space_slope = least_squares(xs, zs).slope;
  }
  return fit;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "solver,n,seed,elapsed_s,peak_list_size,energy,completed\n";
  for (const BenchRow& row : report.rows) {
    out << row.solver << ',' << row.n << ',' << row.seed << ',' << format_real(row.elapsed_seconds)
        << ',' << row.peak_list_size << ',' << to_decimal(row.energy) << ','
        << (row.completed ? '1' : '0') << '\n';
  }
}

void write_fit_json(const BenchReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["bits"] = report.config.bits;
  doc["seeds_per_n"] = report.config.seeds_per_n;
  doc["fits"] = nlohmann::ordered_json::array();
  for (const FitSummary& fit : report.fits) {
    nlohmann::ordered_json entry;
    entry["solver"] = fit.solver;
    entry["levels_used"] = fit.levels_used;
    entry["time_slope"] = fit.time_slope;
    entry["time_residual_rms"] = fit.time_residual_rms;
    if (fit.space_slope_defined) {
      entry["space_slope"] = fit.space_slope;
    } else {
      entry["space_slope"] = nullptr;
    }
    doc["fits"].push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace pgl
