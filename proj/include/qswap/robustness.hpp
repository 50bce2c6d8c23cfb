#pragma once

// Static positional disorder and finite-bandwidth averaging around a
// register design evaluated at k0 = 1.

#include <cstdint>
#include <optional>
#include <vector>

#include "qswap/protocol.hpp"

namespace qswap {

struct DisorderSpec {
  double sigma_rel = 0.0;  // std of each position relative to its designed kd_i, in [0, 0.5)
  int trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> sigma_abs;  // overrides sigma_rel when set
};

struct TrialRecord {
  int trial = 0;
  std::vector<double> positions;  // perturbed x_i
  double fidelity = 0.0;          // process fidelity; NaN for rejected trials
  int resamples = 0;
  bool rejected = false;
};

inline constexpr double kQuantileLevels[] = {0.05, 0.25, 0.5, 0.75, 0.95};

struct FidelityStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  double min = 0.0;
  std::vector<double> quantiles;  // at kQuantileLevels
  int accepted_trials = 0;
  int rejected_trials = 0;    // solver failures
  int resampled_draws = 0;    // draws discarded for breaking the site ordering
};

struct DisorderResult {
  FidelityStats stats;
  std::vector<TrialRecord> trials;  // indexed by trial number
};

// Each trial draws x_i + N(0, sigma_i^2) per static qubit, sigma_i =
// sigma_rel * kd_i, redrawing until 0 > x_1 > x_2 > ... and scores
// |Tr(U^dagger R)|^2 / d^2. The result only depends on (config, spec), not on
// `threads` (0 picks the hardware concurrency).
DisorderResult disorder_trials(const RegisterConfig& config, const DisorderSpec& spec,
                               unsigned threads = 0);

// Quantiles by linear interpolation between order statistics.
FidelityStats summarize(const std::vector<double>& fidelities);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // for the weight function exp(-x^2)
};

QuadratureRule gauss_hermite(int n);

// Process fidelity averaged over k ~ N(1, rel_bandwidth^2) with the physical
// couplings and positions of the design held fixed. Nodes with k <= 0 are
// dropped and the weights renormalized. Throws DomainError for
// rel_bandwidth outside [0, 0.3).
double wavepacket_fidelity(const RegisterConfig& config, double rel_bandwidth, int n_samples);

struct DesignSample {
  double kd;
  double g_tilde;
  double h;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> points() const;
};

// Throws DomainError when a grid point lies within 1e-6 of a multiple of pi.
std::vector<DesignSample> sweep_design_functions(const std::vector<double>& kd_grid);

}  // namespace qswap
