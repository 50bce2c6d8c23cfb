#pragma once

// Stationary multichannel scattering of a particle (mass 1, hbar 1) on a
// line with matrix-valued delta barriers sum_i M_i delta(x - x_i) and an
// optional hard wall at x = 0.
//
// Incoming wave exp(ik(x - x_ref)) e_c from the left; R collects the
// amplitudes of exp(-ik(x - x_ref)), T those of exp(ik(x - x_ref)) beyond
// the last barrier. The derivative jump at a barrier is 2 M phi.

#include <optional>
#include <vector>

#include "qswap/types.hpp"

namespace qswap {

struct Site {
  double position;
  SparseMatrix coupling;  // M_i, Hermitian, physical units (same as k)
};

struct ScatteringProblem {
  Eigen::Index dimension = 1;
  std::vector<Site> sites;
  bool mirror = true;
  double k = 1.0;
  // Phase reference point. Defaults to the outermost (leftmost) barrier,
  // or 0 without barriers.
  std::optional<double> reference;
};

struct ChannelOperators {
  Matrix R;
  std::optional<Matrix> T;  // absent with a mirror
};

enum class SolveMethod {
  automatic,  // matching up to kMaxMatchingUnknowns, transfer beyond
  matching,   // one dense linear system over all region amplitudes
  transfer,   // propagation of region amplitudes barrier by barrier
};

inline constexpr Eigen::Index kMaxMatchingUnknowns = 4096;
inline constexpr double kMaxConditionNumber = 1e12;
inline constexpr double kMergeDistance = 1e-9;

// Throws InputError on invalid problems and DegenerateConfigurationError
// when the linear system's condition number exceeds kMaxConditionNumber.
ChannelOperators solve(const ScatteringProblem& problem,
                       SolveMethod method = SolveMethod::automatic);

// rho -> T rho T^dagger + R rho R^dagger (R only with a mirror). Throws
// InputError unless rho is Hermitian, positive semidefinite and of unit
// trace (to 1e-10).
Matrix apply_kraus(const ChannelOperators& channel, const Matrix& rho);

// Largest entry of |U^dagger U - I| (mirror) or |T^dagger T + R^dagger R - I|.
double flux_defect(const ChannelOperators& channel);

}  // namespace qswap
