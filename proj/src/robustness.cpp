#include "qswap/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include <gsl/gsl_integration.h>

#include "qswap/amplitudes.hpp"

namespace qswap {

namespace {

constexpr int kMaxResamples = 10000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ index);
}

bool ordered(const std::vector<double>& x) {
  if (x.empty()) return true;
  if (!(x.front() < 0.0)) return false;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] < x[i - 1])) return false;
  }
  return true;
}

}  // namespace

FidelityStats summarize(const std::vector<double>& fidelities) {
  FidelityStats stats;
  if (fidelities.empty()) throw InputError("summarize: no samples");
  std::vector<double> sorted = fidelities;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double f : fidelities) sum += f;
  stats.mean = sum / n;
  double ss = 0.0;
  for (double f : fidelities) ss += (f - stats.mean) * (f - stats.mean);
  stats.std = sorted.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  stats.min = sorted.front();
  for (double level : kQuantileLevels) {
    const double pos = level * (n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    stats.quantiles.push_back(sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
  }
  stats.accepted_trials = static_cast<int>(sorted.size());
  return stats;
}

DisorderResult disorder_trials(const RegisterConfig& config, const DisorderSpec& spec, unsigned threads) {
  validate(config);
  if (spec.trials < 1) throw InputError("disorder: trials must be positive");
  if (spec.sigma_abs) {
    if (!std::isfinite(*spec.sigma_abs) || *spec.sigma_abs < 0.0) {
      throw DomainError("disorder: sigma_abs must be >= 0");
    }
  } else if (!std::isfinite(spec.sigma_rel) || spec.sigma_rel < 0.0 || spec.sigma_rel >= 0.5) {
    throw DomainError("disorder: sigma_rel must be in [0, 0.5)");
  }

  const SpinOperatorSet ops = build_spin_operators(config.n_static + 1);
  const Matrix target = target_unitary(config, ops);
  const std::vector<double> designed = site_positions(config);
  std::vector<double> sigmas;
  for (double kd : config.kd) sigmas.push_back(spec.sigma_abs.value_or(spec.sigma_rel * kd));

  DisorderResult result;
  result.trials.resize(static_cast<std::size_t>(spec.trials));

  auto run_trial = [&](int index) {
    TrialRecord& rec = result.trials[static_cast<std::size_t>(index)];
    rec.trial = index;
    std::mt19937_64 rng(trial_seed(spec.seed, static_cast<std::uint64_t>(index)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(designed.size());
    for (;;) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = designed[i] + sigmas[i] * normal(rng);
      if (ordered(x)) break;
      if (++rec.resamples > kMaxResamples) {
        rec.rejected = true;
        break;
      }
    }
    rec.positions = x;
    rec.fidelity = std::numeric_limits<double>::quiet_NaN();
    if (rec.rejected) return;
    try {
      const ChannelOperators channel = solve(build_problem(config, ops, 1.0, x));
      const double f = gate_fidelity(target, channel.R).fidelity;
      rec.fidelity = f * f;
    } catch (const Error&) {
      rec.rejected = true;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.trials));
  if (threads <= 1) {
    for (int i = 0; i < spec.trials; ++i) run_trial(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (int i = next++; i < spec.trials && !failed; i = next++) run_trial(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> fidelities;
  int rejected = 0;
  int resampled = 0;
  for (const auto& rec : result.trials) {
    resampled += rec.resamples;
    if (rec.rejected) {
      ++rejected;
    } else {
      fidelities.push_back(rec.fidelity);
    }
  }
  if (fidelities.empty()) throw NumericalError("disorder: every trial was rejected");
  result.stats = summarize(fidelities);
  result.stats.rejected_trials = rejected;
  result.stats.resampled_draws = resampled;
  return result;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw InputError("gauss_hermite: need at least one node");
  gsl_integration_fixed_workspace* w =
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<std::size_t>(n), 0.0, 1.0, 0.0, 0.0);
  if (w == nullptr) throw NumericalError("gauss_hermite: quadrature allocation failed");
  QuadratureRule rule;
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  rule.nodes.assign(x, x + n);
  rule.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return rule;
}

double wavepacket_fidelity(const RegisterConfig& config, double rel_bandwidth, int n_samples) {
  validate(config);
  if (!std::isfinite(rel_bandwidth) || rel_bandwidth < 0.0) {
    throw DomainError("wavepacket: bandwidth must be >= 0");
  }
  if (rel_bandwidth >= 0.3) throw DomainError("wavepacket: bandwidth >= 0.3 is outside the stationary regime");
  if (n_samples < 1) throw InputError("wavepacket: n_samples must be positive");

  const SpinOperatorSet ops = build_spin_operators(config.n_static + 1);
  const Matrix target = target_unitary(config, ops);
  auto fidelity_at = [&](double k) {
    const ChannelOperators channel = solve(build_problem(config, ops, k));
    const double f = gate_fidelity(target, channel.R).fidelity;
    return f * f;
  };
  if (rel_bandwidth == 0.0) return fidelity_at(1.0);

  const QuadratureRule rule = gauss_hermite(n_samples);
  double sum = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double k = 1.0 + std::sqrt(2.0) * rel_bandwidth * rule.nodes[i];
    if (k <= 0.0) continue;
    sum += rule.weights[i] * fidelity_at(k);
    norm += rule.weights[i];
  }
  return sum / norm;
}

std::vector<double> Grid::points() const {
  if (count < 1) throw InputError("grid: count must be positive");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InputError("grid: bounds must be finite");
  std::vector<double> out;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
  return out;
}

std::vector<DesignSample> sweep_design_functions(const std::vector<double>& kd_grid) {
  std::vector<DesignSample> out;
  out.reserve(kd_grid.size());
  for (double kd : kd_grid) {
    if (!std::isfinite(kd) || std::abs(kd - kPi * std::round(kd / kPi)) < 1e-6) {
      throw DomainError("sweep: grid point " + std::to_string(kd) + " is within 1e-6 of a multiple of pi");
    }
    out.push_back({kd, g_tilde(kd), h_func(kd)});
  }
  return out;
}

}  // namespace qswap
