#include "qswap/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

namespace qswap {

HalfInt HalfInt::from_double(double x) {
  const double twice = 2.0 * x;
  const double rounded = std::round(twice);
  if (!std::isfinite(x) || std::abs(twice - rounded) > 1e-9) {
    throw DomainError("not a half-integer: " + std::to_string(x));
  }
  return from_twice(static_cast<int>(rounded));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

using Triplet = Eigen::Triplet<cplx>;

SparseMatrix from_triplets(Eigen::Index dim, const std::vector<Triplet>& entries) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

int bit_of(Eigen::Index state, int qubit, int n) {
  return static_cast<int>((state >> (n - 1 - qubit)) & 1);
}

}  // namespace

SpinOperatorSet build_spin_operators(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw SizeError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                    "], got " + std::to_string(n_qubits));
  }
  SpinOperatorSet ops;
  ops.n_qubits_ = n_qubits;
  const Eigen::Index dim = ops.dimension();
  ops.components_.resize(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - q);
    std::vector<Triplet> sx, sy, sz;
    sx.reserve(dim);
    sy.reserve(dim);
    sz.reserve(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const bool down = bit_of(b, q, n_qubits) == 1;
      sx.emplace_back(b ^ mask, b, cplx{0.5, 0.0});
      // sigma_y |up> = (i/2)|down>, sigma_y |down> = (-i/2)|up>.
      sy.emplace_back(b ^ mask, b, down ? cplx{0.0, -0.5} : cplx{0.0, 0.5});
      sz.emplace_back(b, b, down ? cplx{-0.5, 0.0} : cplx{0.5, 0.0});
    }
    ops.components_[q] = {from_triplets(dim, sx), from_triplets(dim, sy), from_triplets(dim, sz)};
  }
  return ops;
}

void SpinOperatorSet::check_index(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw IndexError("qubit index " + std::to_string(qubit) + " out of range [0, " +
                     std::to_string(n_qubits_) + ")");
  }
}

const SparseMatrix& SpinOperatorSet::component(int qubit, Axis axis) const {
  check_index(qubit);
  return components_[qubit][static_cast<int>(axis)];
}

SparseMatrix SpinOperatorSet::identity() const {
  SparseMatrix id(dimension(), dimension());
  id.setIdentity();
  return id;
}

SparseMatrix SpinOperatorSet::total_component(std::span<const int> subset, Axis axis) const {
  SparseMatrix total(dimension(), dimension());
  for (int q : subset) total += component(q, axis);
  return total;
}

SparseMatrix SpinOperatorSet::total_lowering() const {
  std::vector<int> all(n_qubits_);
  for (int q = 0; q < n_qubits_; ++q) all[q] = q;
  return total_component(all, Axis::x) - kI * total_component(all, Axis::y);
}

SparseMatrix heisenberg_coupling(const SpinOperatorSet& ops, int i, int j) {
  if (i == j) throw IndexError("heisenberg_coupling needs two distinct qubits");
  SparseMatrix out(ops.dimension(), ops.dimension());
  for (Axis a : kAxes) out += ops.component(i, a) * ops.component(j, a);
  return out;
}

SparseMatrix group_coupling(const SpinOperatorSet& ops, std::span<const int> group_a,
                            std::span<const int> group_b) {
  for (int a : group_a) {
    if (std::find(group_b.begin(), group_b.end(), a) != group_b.end()) {
      throw IndexError("group_coupling needs disjoint groups");
    }
  }
  SparseMatrix out(ops.dimension(), ops.dimension());
  for (Axis a : kAxes) out += ops.total_component(group_a, a) * ops.total_component(group_b, a);
  return out;
}

SparseMatrix swap_operator(const SpinOperatorSet& ops, int i, int j) {
  if (i == j) throw IndexError("swap_operator needs two distinct qubits");
  const int n = ops.n_qubits();
  if (i < 0 || j < 0 || i >= n || j >= n) throw IndexError("swap_operator: qubit out of range");
  const Eigen::Index dim = ops.dimension();
  const Eigen::Index mi = Eigen::Index{1} << (n - 1 - i);
  const Eigen::Index mj = Eigen::Index{1} << (n - 1 - j);
  std::vector<Triplet> entries;
  entries.reserve(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const bool bi = (b & mi) != 0;
    const bool bj = (b & mj) != 0;
    const Eigen::Index c = (bi == bj) ? b : (b ^ mi ^ mj);
    entries.emplace_back(c, b, cplx{1.0, 0.0});
  }
  return from_triplets(dim, entries);
}

PairProjectors singlet_triplet_projectors(const SpinOperatorSet& ops, int i, int j) {
  const SparseMatrix w = swap_operator(ops, i, j);
  const SparseMatrix id = ops.identity();
  return {0.5 * (id - w), 0.5 * (id + w)};
}

SparseMatrix total_spin_squared(const SpinOperatorSet& ops, std::span<const int> subset) {
  if (subset.empty()) throw InputError("total_spin_squared needs a non-empty subset");
  SparseMatrix out(ops.dimension(), ops.dimension());
  for (Axis a : kAxes) {
    const SparseMatrix s = ops.total_component(subset, a);
    out += s * s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// 6j symbols

namespace {

double factorial(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 170) throw DomainError("factorial argument out of range");
  return table[n];
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int x = a.twice(), y = b.twice(), z = c.twice();
  if ((x + y + z) % 2 != 0) return false;
  return z <= x + y && z >= std::abs(x - y);
}

// sqrt[(a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!] in twice-units.
double triangle_coefficient(HalfInt a, HalfInt b, HalfInt c) {
  const int x = a.twice(), y = b.twice(), z = c.twice();
  return std::sqrt(factorial((x + y - z) / 2) * factorial((x - y + z) / 2) *
                   factorial((-x + y + z) / 2) / factorial((x + y + z) / 2 + 1));
}

}  // namespace

double six_j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  for (HalfInt j : {j1, j2, j3, j4, j5, j6}) {
    if (j.twice() < 0) throw DomainError("6j arguments must be non-negative");
  }
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3)) {
    return 0.0;
  }
  const int a1 = (j1.twice() + j2.twice() + j3.twice()) / 2;
  const int a2 = (j1.twice() + j5.twice() + j6.twice()) / 2;
  const int a3 = (j4.twice() + j2.twice() + j6.twice()) / 2;
  const int a4 = (j4.twice() + j5.twice() + j3.twice()) / 2;
  const int b1 = (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2;
  const int b2 = (j2.twice() + j3.twice() + j5.twice() + j6.twice()) / 2;
  const int b3 = (j3.twice() + j1.twice() + j6.twice() + j4.twice()) / 2;
  const int t_min = std::max({a1, a2, a3, a4});
  const int t_max = std::min({b1, b2, b3});
  double sum = 0.0;
  for (int t = t_min; t <= t_max; ++t) {
    const double term = factorial(t + 1) /
                        (factorial(t - a1) * factorial(t - a2) * factorial(t - a3) *
                         factorial(t - a4) * factorial(b1 - t) * factorial(b2 - t) *
                         factorial(b3 - t));
    sum += (t % 2 == 0) ? term : -term;
  }
  return triangle_coefficient(j1, j2, j3) * triangle_coefficient(j1, j5, j6) *
         triangle_coefficient(j4, j2, j6) * triangle_coefficient(j4, j5, j3) * sum;
}

double six_j(double j1, double j2, double j3, double j4, double j5, double j6) {
  return six_j(HalfInt::from_double(j1), HalfInt::from_double(j2), HalfInt::from_double(j3),
               HalfInt::from_double(j4), HalfInt::from_double(j5), HalfInt::from_double(j6));
}

double basis_overlap(HalfInt s_f2, HalfInt s_f1, HalfInt s_2) {
  if (s_f1.twice() != 0 && s_f1.twice() != 2) throw DomainError("s_f1 must be 0 or 1");
  if (s_2.twice() < 1) throw DomainError("s_2 must be at least 1/2");
  if (s_f2.twice() != s_2.twice() - 1 && s_f2.twice() != s_2.twice() + 1) {
    throw DomainError("s_f2 must be s_2 +- 1/2");
  }
  // Racah recoupling phase (-1)^(1/2 + s_2 + s_f1 + s_f2); the exponent is
  // always an integer here.
  const int exponent = (1 + s_2.twice() + s_f1.twice() + s_f2.twice()) / 2;
  const double phase = (exponent % 2 == 0) ? 1.0 : -1.0;
  const double norm = std::sqrt((s_f1.twice() + 1.0) * (s_f2.twice() + 1.0));
  return phase * norm * six_j(s_2, kHalf, s_f2, kHalf, s_2, s_f1);
}

Eigen::Matrix2d overlap_matrix(HalfInt s_2) {
  Eigen::Matrix2d o;
  const HalfInt f2[2] = {s_2 - kHalf, s_2 + kHalf};
  const HalfInt f1[2] = {HalfInt::from_twice(0), HalfInt::from_twice(2)};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) o(r, c) = basis_overlap(f2[r], f1[c], s_2);
  }
  return o;
}

Eigen::Matrix2d s_f2_squared_in_f1_basis(HalfInt s_2) {
  const Eigen::Matrix2d o = overlap_matrix(s_2);
  const Eigen::Vector2d q{(s_2 - kHalf).q(), (s_2 + kHalf).q()};
  return o.transpose() * q.asDiagonal() * o;
}

// ---------------------------------------------------------------------------
// Coupled basis

namespace {

HalfInt spin_from_eigenvalue(double lambda) {
  const double j = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * lambda)));
  return HalfInt::from_twice(static_cast<int>(std::lround(2.0 * j)));
}

// Restriction of a sparse operator to a set of computational states.
Matrix restrict(const SparseMatrix& op, const std::vector<Eigen::Index>& states) {
  std::map<Eigen::Index, Eigen::Index> position;
  for (std::size_t i = 0; i < states.size(); ++i) position[states[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (SparseMatrix::InnerIterator it(op, states[c]); it; ++it) {
      auto found = position.find(it.row());
      if (found != position.end()) out(found->second, c) = it.value();
    }
  }
  return out;
}

struct Refined {
  std::vector<HalfInt> chain;
  Vector vector;  // in the restricted coordinates
};

// Splits span(basis) into eigenspaces of `ops_chain[level]`, recursing until
// every piece is one-dimensional.
void refine(const Matrix& basis, std::size_t level, const std::vector<Matrix>& ops_chain,
            std::vector<HalfInt>& chain, std::vector<Refined>& out) {
  if (level == ops_chain.size()) {
    if (basis.cols() != 1) {
      throw StructureError("coupled basis: chain quantum numbers do not resolve a subspace");
    }
    out.push_back({chain, basis.col(0)});
    return;
  }
  const Matrix h = basis.adjoint() * ops_chain[level] * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  std::map<HalfInt, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    groups[spin_from_eigenvalue(es.eigenvalues()(i))].push_back(i);
  }
  for (const auto& [spin, columns] : groups) {
    Matrix sub(basis.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = basis * es.eigenvectors().col(columns[c]);
    }
    // Re-orthonormalize against eigen-solver round-off.
    Eigen::HouseholderQR<Matrix> qr(sub);
    sub = qr.householderQ() * Matrix::Identity(sub.rows(), sub.cols());
    chain.push_back(spin);
    refine(sub, level + 1, ops_chain, chain, out);
    chain.pop_back();
  }
}

void fix_phase(Vector& v) {
  const double max_abs = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= max_abs * (1.0 - 1e-9)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace

CoupledBasis coupled_basis(const SpinOperatorSet& ops) {
  const int n = ops.n_qubits();
  const Eigen::Index dim = ops.dimension();
  std::vector<int> all(n);
  for (int q = 0; q < n; ++q) all[q] = q;
  const SparseMatrix s2 = total_spin_squared(ops, all);
  std::vector<SparseMatrix> chain_ops;
  for (int j = 1; j <= n - 2; ++j) {
    std::vector<int> sub(all.begin(), all.begin() + j + 1);
    chain_ops.push_back(total_spin_squared(ops, sub));
  }
  const SparseMatrix lowering = ops.total_lowering();

  struct Entry {
    CoupledBasisLabel label;
    Vector vector;
  };
  std::vector<Entry> entries;
  entries.reserve(dim);

  for (int twice_s = n; twice_s >= 0; twice_s -= 2) {
    // Highest-weight states: m = s, i.e. (n - twice_s)/2 spins down.
    const int n_down = (n - twice_s) / 2;
    std::vector<Eigen::Index> states;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (__builtin_popcountll(static_cast<unsigned long long>(b)) == n_down) states.push_back(b);
    }
    const Matrix s2_sub = restrict(s2, states);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s2_sub + s2_sub.adjoint()));
    const double target = HalfInt::from_twice(twice_s).q();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (std::abs(es.eigenvalues()(i) - target) < 1e-6) keep.push_back(i);
    }
    if (keep.empty()) continue;
    Matrix basis(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    }
    std::vector<Matrix> chain_sub;
    for (const auto& op : chain_ops) chain_sub.push_back(restrict(op, states));

    std::vector<Refined> refined;
    std::vector<HalfInt> chain;
    refine(basis, 0, chain_sub, chain, refined);

    const HalfInt s = HalfInt::from_twice(twice_s);
    for (auto& r : refined) {
      Vector full = Vector::Zero(dim);
      for (std::size_t i = 0; i < states.size(); ++i) full(states[i]) = r.vector(static_cast<Eigen::Index>(i));
      fix_phase(full);
      for (int twice_m = twice_s; twice_m >= -twice_s; twice_m -= 2) {
        if (twice_m != twice_s) {
          Vector lowered = lowering * full;
          full = lowered / lowered.norm();
        }
        entries.push_back({{s, HalfInt::from_twice(twice_m), r.chain}, full});
      }
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.label.s != b.label.s) return a.label.s < b.label.s;
    if (a.label.m != b.label.m) return a.label.m < b.label.m;
    return a.label.chain < b.label.chain;
  });

  CoupledBasis out;
  out.vectors.resize(dim, dim);
  out.labels.reserve(dim);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out.labels.push_back(entries[i].label);
    out.vectors.col(static_cast<Eigen::Index>(i)) = entries[i].vector;
  }
  return out;
}

std::vector<SpinBlock> block_decompose(const SpinOperatorSet& ops, const Matrix& matrix,
                                       double tol) {
  const Eigen::Index dim = ops.dimension();
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw SizeError("block_decompose: matrix dimension does not match the operator set");
  }
  std::vector<int> all(ops.n_qubits());
  for (int q = 0; q < ops.n_qubits(); ++q) all[q] = q;
  const SparseMatrix s2 = total_spin_squared(ops, all);
  const SparseMatrix sz = ops.total_component(all, Axis::z);
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double s2_scale = std::max(1.0, HalfInt::from_twice(ops.n_qubits()).q());
  const Matrix c1 = matrix * s2 - s2 * matrix;
  const Matrix c2 = matrix * sz - sz * matrix;
  const double defect = std::max(c1.cwiseAbs().maxCoeff() / s2_scale, c2.cwiseAbs().maxCoeff());
  if (defect > tol * scale) {
    throw StructureError("block_decompose: matrix does not commute with S^2 and S_z (defect " +
                         std::to_string(defect) + ")");
  }

  const CoupledBasis basis = coupled_basis(ops);
  std::vector<SpinBlock> blocks;
  for (std::size_t i = 0; i < basis.labels.size();) {
    std::size_t j = i;
    while (j < basis.labels.size() && basis.labels[j].s == basis.labels[i].s &&
           basis.labels[j].m == basis.labels[i].m) {
      ++j;
    }
    SpinBlock b;
    b.s = basis.labels[i].s;
    b.m = basis.labels[i].m;
    b.labels.assign(basis.labels.begin() + static_cast<std::ptrdiff_t>(i),
                    basis.labels.begin() + static_cast<std::ptrdiff_t>(j));
    b.basis = basis.vectors.middleCols(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - i));
    b.block = b.basis.adjoint() * matrix * b.basis;
    blocks.push_back(std::move(b));
    i = j;
  }
  return blocks;
}

Matrix reassemble(const std::vector<SpinBlock>& blocks, Eigen::Index dimension) {
  Matrix out = Matrix::Zero(dimension, dimension);
  for (const auto& b : blocks) out += b.basis * b.block * b.basis.adjoint();
  return out;
}

}  // namespace qswap
