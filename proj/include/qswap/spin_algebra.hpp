#pragma once

// Spin-1/2 operators on the product space of n qubits, coupled bases and
// recoupling coefficients.
//
// Conventions: qubit 0 is the flying qubit; static qubits are 1..N ordered
// by increasing distance from the mirror. Qubit 0 is the most significant
// factor of the Kronecker product, and computational bit 0 is spin up
// (sigma_z = +1/2). Spin components have eigenvalues +-1/2 (hbar = 1).

#include <array>
#include <span>
#include <vector>

#include "qswap/types.hpp"

namespace qswap {

enum class Axis { x, y, z };
inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

inline constexpr int kMaxQubits = 12;

class SpinOperatorSet {
 public:
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return Eigen::Index{1} << n_qubits_; }

  const SparseMatrix& component(int qubit, Axis axis) const;
  SparseMatrix identity() const;

  // Sum of the given qubits' components along one axis.
  SparseMatrix total_component(std::span<const int> subset, Axis axis) const;
  // Total lowering operator S_- = S_x - i S_y over every qubit.
  SparseMatrix total_lowering() const;

 private:
  friend SpinOperatorSet build_spin_operators(int n_qubits);
  void check_index(int qubit) const;

  int n_qubits_ = 0;
  std::vector<std::array<SparseMatrix, 3>> components_;
};

// Throws SizeError unless 1 <= n_qubits <= kMaxQubits.
SpinOperatorSet build_spin_operators(int n_qubits);

// sigma_i . sigma_j. Eigenvalues -3/4 (singlet) and 1/4 (triplet) on the pair.
SparseMatrix heisenberg_coupling(const SpinOperatorSet& ops, int i, int j);

// (sum_{a in A} sigma_a) . (sum_{b in B} sigma_b) for disjoint groups.
SparseMatrix group_coupling(const SpinOperatorSet& ops, std::span<const int> group_a,
                            std::span<const int> group_b);

// Permutation exchanging the states of qubits i and j (= -Pi_s + Pi_t).
SparseMatrix swap_operator(const SpinOperatorSet& ops, int i, int j);

struct PairProjectors {
  SparseMatrix singlet;
  SparseMatrix triplet;
};
PairProjectors singlet_triplet_projectors(const SpinOperatorSet& ops, int i, int j);

// (sum_{i in subset} sigma_i)^2. Throws InputError on an empty subset.
SparseMatrix total_spin_squared(const SpinOperatorSet& ops, std::span<const int> subset);

// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} from the Racah sum. Zero when any
// of the four triads violates the triangle condition.
double six_j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);
// Same, from doubles; throws DomainError for anything that is not a
// non-negative half-integer.
double six_j(double j1, double j2, double j3, double j4, double j5, double j6);

// <s_f2 | s_f1> between the two coupling schemes ((f,1)s_f1, 2) and
// ((f,2)s_f2, 1) inside the s = s_2 subspace, where qubit 2 carries spin s_2.
double basis_overlap(HalfInt s_f2, HalfInt s_f1, HalfInt s_2);

// Rows s_f2 = s_2 - 1/2, s_2 + 1/2; columns s_f1 = 0, 1.
Eigen::Matrix2d overlap_matrix(HalfInt s_2);

// S_f2^2 in the basis {|s_f1 = 0>, |s_f1 = 1>} obtained from overlap_matrix.
Eigen::Matrix2d s_f2_squared_in_f1_basis(HalfInt s_2);

// Quantum numbers of one vector of the sequentially coupled basis
// (((0,1),2),...). chain[j-1] is the spin of qubits 0..j for j = 1..n-2.
struct CoupledBasisLabel {
  HalfInt s;
  HalfInt m;
  std::vector<HalfInt> chain;

  // Spin of the pair (0,1); equals s for two qubits.
  HalfInt s_f1() const { return chain.empty() ? s : chain.front(); }

  friend bool operator==(const CoupledBasisLabel&, const CoupledBasisLabel&) = default;
};

struct CoupledBasis {
  std::vector<CoupledBasisLabel> labels;
  Matrix vectors;  // one column per label
};

// Orthonormal basis of simultaneous eigenvectors of S^2, S_z and the chain
// S_{0..j}^2, sorted by (s, m, chain). Highest-weight vectors have their
// largest computational component real positive (lowest index on ties); the
// rest of each multiplet is generated by S_-.
CoupledBasis coupled_basis(const SpinOperatorSet& ops);

struct SpinBlock {
  HalfInt s;
  HalfInt m;
  std::vector<CoupledBasisLabel> labels;
  Matrix basis;  // dimension x block size
  Matrix block;  // basis^dagger * A * basis
};

// Splits a matrix commuting with S^2 and S_z into its (s, m) blocks. Throws
// StructureError when either commutator exceeds tol (relative).
std::vector<SpinBlock> block_decompose(const SpinOperatorSet& ops, const Matrix& matrix,
                                       double tol = 1e-8);

// Inverse of block_decompose.
Matrix reassemble(const std::vector<SpinBlock>& blocks, Eigen::Index dimension);

}  // namespace qswap
