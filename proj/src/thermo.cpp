#include "pgl/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "pgl/detail/half_enum.hpp"
#include "pgl/errors.hpp"

namespace pgl {
namespace {

template <class S>
S abs_of(const S& x) {
  return x < 0 ? S(-x) : x;
}

// |discrepancy| -> number of half-space subsets (those containing index 1).
// Each entry stands for itself and its complement, so full counts double it.
template <class S>
std::map<S, std::uint64_t> abs_disc_counts(const std::vector<S>& w, const S& total) {
  std::map<S, std::uint64_t> counts;
  detail::for_each_half_subset<S>(w, total, [&](std::uint64_t, const S& disc) {
    counts[abs_of(disc)] += 1;
  });
  return counts;
}

void require_finite_beta(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw ValidationError("beta must be finite and nonnegative, got " + std::to_string(beta));
  }
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

EnergyHistogram energy_histogram(const Instance& instance, const SolverCaps& caps) {
  const std::uint32_t n = instance.size();
  if (n > caps.brute_force_cap || n > 64) {
    throw CapRefusalError("the energy histogram is exhaustive and capped at N <= " +
                          std::to_string(std::min<std::uint32_t>(caps.brute_force_cap, 64)) +
                          " (instance has N = " + std::to_string(n) + ")");
  }

  constexpr std::int64_t kSafe = std::numeric_limits<std::int64_t>::max() / 4;
  EnergyHistogram histogram;
  histogram.n = n;

  std::map<Int, std::uint64_t> by_abs;
  if (instance.total() <= kSafe) {
    std::vector<std::int64_t> w;
    w.reserve(n);
    for (const Int& q : instance.weights()) w.push_back(q.convert_to<std::int64_t>());
    for (auto& [d, c] : abs_disc_counts<std::int64_t>(w, instance.total().convert_to<std::int64_t>())) {
      by_abs.emplace(Int(d), c);
    }
  } else {
    by_abs = abs_disc_counts<Int>(instance.weights(), instance.total());
  }

  histogram.e_min = by_abs.begin()->first * by_abs.begin()->first;
  histogram.groups.reserve(by_abs.size());
  for (const auto& [d, c] : by_abs) {
    EnergyGroup group;
    group.delta = d * d - histogram.e_min;
    group.delta_d = group.delta.convert_to<double>();
    group.count = 2 * c;
    histogram.groups.push_back(std::move(group));
  }
  return histogram;
}

BoltzmannTable boltzmann_table(const EnergyHistogram& histogram, double beta) {
  require_finite_beta(beta);
  BoltzmannTable table;
  table.beta = beta;
  table.e_min = histogram.e_min;
  table.shifted_log_weights.reserve(histogram.groups.size());
  table.multiplicities.reserve(histogram.groups.size());

  // log sum_g count_g exp(-beta delta_g), stabilized by the largest term.
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(histogram.groups.size());
  for (const EnergyGroup& g : histogram.groups) {
    const double log_weight = -beta * g.delta_d;
    table.shifted_log_weights.push_back(log_weight);
    table.multiplicities.push_back(g.count);
    const double term = std::log(static_cast<double>(g.count)) + log_weight;
    terms.push_back(term);
    max_term = std::max(max_term, term);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - max_term);
  table.log_partition_shifted = max_term + std::log(acc);
  return table;
}

EnsembleReport ensemble_report(const EnergyHistogram& histogram, double beta) {
  const BoltzmannTable table = boltzmann_table(histogram, beta);
  EnsembleReport report;
  report.beta = beta;

  double gap = 0.0;
  double checksum = 0.0;
  for (std::size_t g = 0; g < histogram.groups.size(); ++g) {
    const double log_p = std::log(static_cast<double>(table.multiplicities[g])) +
                         table.shifted_log_weights[g] - table.log_partition_shifted;
    const double p = std::exp(log_p);
    checksum += p;
    gap += p * histogram.groups[g].delta_d;
  }
  report.gap_to_ground = gap;
  report.average_energy = histogram.e_min.convert_to<double>() + gap;
  report.probabilities_checksum = checksum;
  return report;
}

EnsembleReport ensemble_average_energy(const Instance& instance, double beta,
                                       const SolverCaps& caps) {
  return ensemble_report(energy_histogram(instance, caps), beta);
}

std::vector<EnsembleReport> beta_sweep(const Instance& instance, const std::vector<double>& betas,
                                       const SolverCaps& caps) {
  if (betas.empty()) {
    throw ValidationError("the beta sweep needs at least one beta");
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    require_finite_beta(betas[i]);
    if (i > 0 && !(betas[i - 1] < betas[i])) {
      throw ValidationError("betas must be strictly ascending");
    }
  }
  const EnergyHistogram histogram = energy_histogram(instance, caps);
  std::vector<EnsembleReport> reports;
  reports.reserve(betas.size());
  for (double beta : betas) reports.push_back(ensemble_report(histogram, beta));
  return reports;
}

void write_sweep_csv(const std::vector<EnsembleReport>& reports, std::ostream& out) {
  out << "beta,average_energy,gap_to_ground,checksum\n";
  for (const EnsembleReport& r : reports) {
    out << format_real(r.beta) << ',' << format_real(r.average_energy) << ','
        << format_real(r.gap_to_ground) << ',' << format_real(r.probabilities_checksum) << '\n';
  }
}

}  // namespace pgl
