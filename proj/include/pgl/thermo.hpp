#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pgl/bigint.hpp"
#include "pgl/instance.hpp"
#include "pgl/solvers.hpp"

namespace pgl {

// Distinct energies over all 2^N spin configurations, as exact shifts above
// the ground energy. Groups are sorted by ascending delta; the first group is
// always delta = 0. Counts sum to 2^N.
struct EnergyGroup {
  Int delta;            // energy - e_min, exact
  double delta_d;       // the same, rounded once for exp()
  std::uint64_t count;  // configurations at this energy (complement pairs included)
};

struct EnergyHistogram {
  std::uint32_t n = 0;
  Int e_min;
  std::vector<EnergyGroup> groups;
};

// Exhaustive; throws CapRefusalError when N exceeds the brute-force cap.
EnergyHistogram energy_histogram(const Instance& instance, const SolverCaps& caps = {});

// Boltzmann weights at inverse temperature beta, one row per distinct energy.
// shifted_log_weights[g] = -beta * delta_g <= 0, with 0 at the ground group;
// log_partition_shifted = log sum_k exp(-beta (H_k - e_min)) over all 2^N k.
struct BoltzmannTable {
  double beta = 0.0;
  Int e_min;
  std::vector<double> shifted_log_weights;
  std::vector<std::uint64_t> multiplicities;
  double log_partition_shifted = 0.0;
};

BoltzmannTable boltzmann_table(const EnergyHistogram& histogram, double beta);

// gap_to_ground is computed directly from the shifted energies (never as a
// difference of two large numbers); average_energy = e_min + gap.
// probabilities_checksum re-sums the normalized probabilities and should be 1
// up to roundoff. beta = 0 is the uniform ensemble; beta < 0 is rejected.
struct EnsembleReport {
  double beta = 0.0;
  double average_energy = 0.0;
  double gap_to_ground = 0.0;
  double probabilities_checksum = 0.0;
};

EnsembleReport ensemble_report(const EnergyHistogram& histogram, double beta);
EnsembleReport ensemble_average_energy(const Instance& instance, double beta,
                                       const SolverCaps& caps = {});

// Betas must be strictly ascending and nonnegative. The mean energy is
// mathematically non-increasing in beta (its derivative is -Var(E)).
std::vector<EnsembleReport> beta_sweep(const Instance& instance,
                                       const std::vector<double>& betas,
                                       const SolverCaps& caps = {});

// CSV with header beta,average_energy,gap_to_ground,checksum; reals printed
// with 17 significant digits.
void write_sweep_csv(const std::vector<EnsembleReport>& reports, std::ostream& out);

}  // namespace pgl
