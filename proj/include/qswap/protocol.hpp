#pragma once

// Register designs implementing a selective SWAP between the flying qubit
// and one static qubit, and their verification against the solver.
//
// A design is expressed at the reference momentum k = 1, so optical
// distances kd_i double as physical distances and g as the coupling G.

#include <optional>
#include <string>
#include <vector>

#include "qswap/solver.hpp"
#include "qswap/spin_algebra.hpp"
#include "qswap/types.hpp"

namespace qswap {

struct RegisterConfig {
  int n_static = 1;              // N
  std::vector<double> kd;        // kd_1 = mirror..SQ_1, kd_i = SQ_{i-1}..SQ_i
  double g = 0.0;                // uniform coupling G/k
  int target = 1;                // nu in 1..N
  std::vector<int> windings;     // n_i >= 1 per slot
  std::vector<double> couplings; // optional per-site g_i; empty means uniform g

  double coupling(int site) const;  // site in 1..N
};

// Throws InputError when the config is structurally invalid.
void validate(const RegisterConfig& config);

// Barrier positions x_i = -(kd_1 + ... + kd_i) at k = 1.
std::vector<double> site_positions(const RegisterConfig& config);

// Problem with Heisenberg barriers G_i sigma_0.sigma_i at the given
// positions (default: the designed ones), probed at momentum k.
ScatteringProblem build_problem(const RegisterConfig& config, const SpinOperatorSet& ops,
                                double k = 1.0,
                                const std::optional<std::vector<double>>& positions = std::nullopt);

// SWAP between the flying qubit and the target, identity elsewhere.
Matrix target_unitary(const RegisterConfig& config, const SpinOperatorSet& ops);

// Selective-SWAP design for target nu. Windings default to 1; slot i gets
// n_i pi (merged slots), kd_a + (n_nu - 1) pi, or h(kd_a) + (n_{nu+1} - 1) pi.
// Throws DesignError for kd_a within 1e-8 of a multiple of pi.
RegisterConfig design_register(int n_static, int target, double kd_a,
                               std::vector<int> windings = {});

struct GateFidelity {
  double fidelity;  // |Tr(U^dagger V)| / d
  double phase;     // arg Tr(U^dagger V)
};

// Throws InputError unless both are unitary to 1e-10.
GateFidelity gate_fidelity(const Matrix& u, const Matrix& v);

struct BystanderDisturbance {
  int qubit;
  double choi_distance;  // trace distance between Choi states of the induced map and identity
};

struct FidelityReport {
  double fidelity = 0.0;
  double process_fidelity = 0.0;  // fidelity^2
  double optimal_phase = 0.0;
  std::string target_unitary;
  std::vector<BystanderDisturbance> bystanders;
};

// Map induced on one static qubit when the others and the flying qubit
// start maximally mixed; returns its Choi distance from the identity.
double induced_map_distance(const Matrix& unitary, int n_qubits, int qubit);

FidelityReport verify_swap(const RegisterConfig& config);

// Same as verify_swap with one barrier modified according to its role:
//   site < target      (merged into the mirror): coupling -> strength * I
//   site == target + 1 (outer barrier): the G/4 it acts with where f,
//                       target and site are fully symmetric -> strength
//   site >= target + 2 (co-located group): Heisenberg strength -> strength
// Throws IndexError for the target itself or a site outside a merged group.
FidelityReport independence_check(const RegisterConfig& config, int site_index,
                                  double replacement_strength);

struct EffectiveSpin {
  HalfInt s_eff;
  int multiplicity;
};

// Clebsch-Gordan content of the N - nu spins beyond the target, ascending.
std::vector<EffectiveSpin> effective_spin_spectrum(int n_static, int target);

// Degenerate s = s_eff block of `reflection` for the largest s_eff, in the
// basis |0> = singlet(f, nu) x |up...up>, |1> = 2 (sigma_f . sigma_eff)|0> / sqrt(q).
// Requires target < N.
Eigen::Matrix2cd swap_block(const RegisterConfig& config, const SpinOperatorSet& ops,
                            const Matrix& reflection);

}  // namespace qswap
