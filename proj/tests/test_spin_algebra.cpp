#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qswap/spin_algebra.hpp"
#include "support/oracles.hpp"

using namespace qswap;

namespace {

Matrix dense(const SparseMatrix& m) { return Matrix(m); }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SpinOperators, MatchKroneckerOracle) {
  for (int n = 1; n <= 4; ++n) {
    const SpinOperatorSet ops = build_spin_operators(n);
    EXPECT_EQ(ops.dimension(), 1 << n);
    for (int q = 0; q < n; ++q) {
      for (int a = 0; a < 3; ++a) {
        EXPECT_LT(max_abs(dense(ops.component(q, kAxes[a])) - oracle::qubit_spin(n, q, a)), 1e-15);
      }
    }
  }
}

TEST(SpinOperators, SingleQubitSigmaZ) {
  const SpinOperatorSet ops = build_spin_operators(1);
  Matrix expected(2, 2);
  expected << 0.5, 0, 0, -0.5;
  EXPECT_LT(max_abs(dense(ops.component(0, Axis::z)) - expected), 1e-15);
}

TEST(SpinOperators, AlgebraInvariants) {
  const int n = 4;
  const SpinOperatorSet ops = build_spin_operators(n);
  const Matrix id = Matrix::Identity(ops.dimension(), ops.dimension());
  for (int i = 0; i < n; ++i) {
    Matrix sq = Matrix::Zero(ops.dimension(), ops.dimension());
    for (Axis a : kAxes) {
      const Matrix s = dense(ops.component(i, a));
      EXPECT_LT(max_abs(s - s.adjoint()), 1e-12);
      EXPECT_NEAR(std::abs(s.trace()), 0.0, 1e-12);
      const Eigen::VectorXd ev = hermitian_eigenvalues(s);
      for (Eigen::Index k = 0; k < ev.size(); ++k) EXPECT_NEAR(std::abs(ev(k)), 0.5, 1e-12);
      sq += s * s;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (Axis b : kAxes) {
          const Matrix t = dense(ops.component(j, b));
          EXPECT_LT(max_abs(s * t - t * s), 1e-12);
        }
      }
    }
    EXPECT_LT(max_abs(sq - 0.75 * id), 1e-12);
  }
  // [S_x, S_y] = i S_z on one qubit.
  const Matrix x = dense(ops.component(2, Axis::x)), y = dense(ops.component(2, Axis::y));
  EXPECT_LT(max_abs(x * y - y * x - kI * dense(ops.component(2, Axis::z))), 1e-12);
}

TEST(SpinOperators, TwoQubitTotalSz) {
  const SpinOperatorSet ops = build_spin_operators(2);
  const int both[] = {0, 1};
  Eigen::VectorXd ev = hermitian_eigenvalues(dense(ops.total_component(both, Axis::z)));
  std::sort(ev.data(), ev.data() + ev.size());
  EXPECT_NEAR(ev(0), -1, 1e-12);
  EXPECT_NEAR(ev(1), 0, 1e-12);
  EXPECT_NEAR(ev(2), 0, 1e-12);
  EXPECT_NEAR(ev(3), 1, 1e-12);
}

TEST(SpinOperators, RejectsBadSizes) {
  EXPECT_THROW(build_spin_operators(0), SizeError);
  EXPECT_THROW(build_spin_operators(kMaxQubits + 1), SizeError);
  const SpinOperatorSet ops = build_spin_operators(2);
  EXPECT_THROW(ops.component(2, Axis::x), IndexError);
}

TEST(Heisenberg, SingletTripletSpectrumAndIdentity) {
  const SpinOperatorSet ops = build_spin_operators(2);
  const Matrix h = dense(heisenberg_coupling(ops, 0, 1));
  EXPECT_LT(max_abs(h - oracle::dense_heisenberg(2, 0, 1)), 1e-15);
  Eigen::VectorXd ev = hermitian_eigenvalues(h);
  std::sort(ev.data(), ev.data() + ev.size());
  EXPECT_NEAR(ev(0), -0.75, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.25, 1e-12);

  // sigma_i . sigma_j = (S_ij^2 - sigma_i^2 - sigma_j^2) / 2
  const SpinOperatorSet ops3 = build_spin_operators(3);
  const int pair[] = {0, 2};
  const Matrix lhs = dense(heisenberg_coupling(ops3, 0, 2));
  const Matrix rhs = 0.5 * (dense(total_spin_squared(ops3, pair)) - 1.5 * Matrix::Identity(8, 8));
  EXPECT_LT(max_abs(lhs - rhs), 1e-12);
  EXPECT_THROW(heisenberg_coupling(ops3, 1, 1), IndexError);
}

TEST(Heisenberg, CommutesWithTotalSpin) {
  const SpinOperatorSet ops = build_spin_operators(3);
  const int all[] = {0, 1, 2};
  const Matrix s2 = dense(total_spin_squared(ops, all));
  const Matrix h = dense(heisenberg_coupling(ops, 0, 1));
  EXPECT_LT(max_abs(h * s2 - s2 * h), 1e-12);
}

TEST(GroupCoupling, EqualsSumOfPairs) {
  const SpinOperatorSet ops = build_spin_operators(4);
  const int a[] = {0};
  const int b[] = {2, 3};
  const Matrix expected = dense(heisenberg_coupling(ops, 0, 2) + heisenberg_coupling(ops, 0, 3));
  EXPECT_LT(max_abs(dense(group_coupling(ops, a, b)) - expected), 1e-12);
}

TEST(Swap, ActionAndDecomposition) {
  const SpinOperatorSet ops = build_spin_operators(2);
  const Matrix w = dense(swap_operator(ops, 0, 1));
  // |up down> = index 1, |down up> = index 2
  EXPECT_NEAR(std::abs(w(2, 1) - 1.0), 0.0, 1e-15);
  EXPECT_LT(max_abs(w * w - Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(max_abs(w - w.adjoint()), 1e-15);
  const PairProjectors p = singlet_triplet_projectors(ops, 0, 1);
  EXPECT_LT(max_abs(w - (dense(p.triplet) - dense(p.singlet))), 1e-12);
}

TEST(Swap, ConjugatesSpinComponents) {
  const SpinOperatorSet ops = build_spin_operators(4);
  const Matrix w = dense(swap_operator(ops, 1, 3));
  for (Axis a : kAxes) {
    EXPECT_LT(max_abs(w * dense(ops.component(1, a)) * w - dense(ops.component(3, a))), 1e-12);
  }
  EXPECT_THROW(swap_operator(ops, 2, 2), IndexError);
}

TEST(Projectors, Properties) {
  const SpinOperatorSet ops = build_spin_operators(3);
  const PairProjectors p = singlet_triplet_projectors(ops, 0, 1);
  const Matrix s = dense(p.singlet), t = dense(p.triplet);
  EXPECT_LT(max_abs(s + t - Matrix::Identity(8, 8)), 1e-12);
  EXPECT_LT(max_abs(s * s - s), 1e-12);
  EXPECT_LT(max_abs(s * t), 1e-12);
  // Rank 1 on the pair, times the dimension of the spectator.
  EXPECT_NEAR(s.trace().real(), 2.0, 1e-12);
  EXPECT_NEAR(t.trace().real(), 6.0, 1e-12);

  const SpinOperatorSet two = build_spin_operators(2);
  const PairProjectors q = singlet_triplet_projectors(two, 0, 1);
  Vector psi_minus = Vector::Zero(4);
  psi_minus(1) = 1 / std::sqrt(2.0);
  psi_minus(2) = -1 / std::sqrt(2.0);
  EXPECT_LT((q.singlet * psi_minus - psi_minus).norm(), 1e-12);
  Vector up_up = Vector::Zero(4);
  up_up(0) = 1;
  EXPECT_LT((q.singlet * up_up).norm(), 1e-12);
}

TEST(TotalSpin, Spectra) {
  const SpinOperatorSet ops = build_spin_operators(3);
  const int pair[] = {0, 1};
  const int all[] = {0, 1, 2};
  const int f2[] = {0, 2};
  Eigen::VectorXd ev2 = hermitian_eigenvalues(dense(total_spin_squared(build_spin_operators(2), pair)));
  std::sort(ev2.data(), ev2.data() + ev2.size());
  EXPECT_NEAR(ev2(0), 0, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev2(i), 2, 1e-12);

  Eigen::VectorXd ev3 = hermitian_eigenvalues(dense(total_spin_squared(ops, all)));
  std::sort(ev3.data(), ev3.data() + ev3.size());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev3(i), 0.75, 1e-12);
  for (int i = 4; i < 8; ++i) EXPECT_NEAR(ev3(i), 3.75, 1e-12);

  const Matrix s = dense(total_spin_squared(ops, all));
  const Matrix a = dense(total_spin_squared(ops, pair));
  const Matrix b = dense(total_spin_squared(ops, f2));
  EXPECT_LT(max_abs(a * s - s * a), 1e-12);
  EXPECT_GT(max_abs(a * b - b * a), 0.1);
  EXPECT_THROW(total_spin_squared(ops, std::span<const int>{}), InputError);
}

TEST(SixJ, MatchesRecouplingOracleUpToThree) {
  int checked = 0;
  const int max_twice = 6;
  for (int a = 0; a <= max_twice; ++a)
    for (int b = 0; b <= max_twice; ++b)
      for (int c = 0; c <= max_twice; ++c)
        for (int d = 0; d <= max_twice; ++d)
          for (int e = 0; e <= max_twice; ++e)
            for (int f = 0; f <= max_twice; ++f) {
              // Sparse sampling keeps the sweep fast but covers every parity class.
              if ((a * 7 + b * 5 + c * 3 + d * 11 + e * 13 + f) % 5 != 0) continue;
              const double expected =
                  oracle::six_j_by_recoupling(a / 2.0, b / 2.0, c / 2.0, d / 2.0, e / 2.0, f / 2.0);
              const double got = six_j(HalfInt::from_twice(a), HalfInt::from_twice(b), HalfInt::from_twice(c),
                                       HalfInt::from_twice(d), HalfInt::from_twice(e), HalfInt::from_twice(f));
              ASSERT_NEAR(got, expected, 1e-10) << a << ' ' << b << ' ' << c << ' ' << d << ' ' << e << ' ' << f;
              if (expected != 0.0) ++checked;
            }
  EXPECT_GT(checked, 500);
}

TEST(SixJ, KnownValuesAndTriangles) {
  // {1/2 1/2 1; 1/2 1/2 0} = 1/2 ; {1 1 1; 1 1 1} = 1/6
  EXPECT_NEAR(six_j(0.5, 0.5, 1.0, 0.5, 0.5, 0.0), 0.5, 1e-14);
  EXPECT_NEAR(six_j(1.0, 1.0, 1.0, 1.0, 1.0, 1.0), 1.0 / 6.0, 1e-14);
  EXPECT_EQ(six_j(0.5, 0.5, 2.0, 0.5, 0.5, 0.0), 0.0);
  EXPECT_THROW(six_j(0.3, 0.5, 1.0, 0.5, 0.5, 0.0), DomainError);
  EXPECT_THROW(six_j(-0.5, 0.5, 1.0, 0.5, 0.5, 0.0), DomainError);
}

TEST(SixJ, Orthogonality) {
  auto triad = [](double a, double b, double c) {
    return c >= std::abs(a - b) && c <= a + b && std::fmod(a + b + c, 1.0) == 0.0;
  };
  const double vals[] = {0.5, 1.0, 1.5, 2.0};
  int checked = 0;
  for (double a : vals)
    for (double b : vals)
      for (double c : vals)
        for (double d : vals)
          for (double p = 0; p <= 4; p += 0.5) {
            if (!triad(a, d, p) || !triad(c, b, p)) continue;
            for (double q = 0; q <= 4; q += 0.5) {
              if (!triad(a, d, q) || !triad(c, b, q)) continue;
              double sum = 0.0;
              for (double x = 0; x <= 6; x += 0.5) sum += (2 * x + 1) * six_j(a, b, x, c, d, p) * six_j(a, b, x, c, d, q);
              EXPECT_NEAR(sum, p == q ? 1.0 / (2 * p + 1) : 0.0, 1e-12);
              ++checked;
            }
          }
  EXPECT_GT(checked, 100);
}

TEST(BasisOverlap, SignsMatchCondonShortleyOracle) {
  for (int twice_s2 = 1; twice_s2 <= 6; ++twice_s2) {
    const HalfInt s2 = HalfInt::from_twice(twice_s2);
    const Eigen::Matrix2d o = overlap_matrix(s2);
    const double f2[2] = {s2.value() - 0.5, s2.value() + 0.5};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        EXPECT_NEAR(o(r, c), oracle::recoupling_overlap_cs(f2[r], c, s2.value()), 1e-12) << s2.str();
      }
    }
    EXPECT_LT((o * o.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BasisOverlap, HalfSpinSquaredOverlaps) {
  const Eigen::Matrix2d o = overlap_matrix(kHalf);
  EXPECT_NEAR(o(0, 0) * o(0, 0) + o(1, 0) * o(1, 0), 1.0, 1e-12);
  const double a = o(0, 0) * o(0, 0), b = o(1, 0) * o(1, 0);
  EXPECT_NEAR(std::min(a, b), 0.25, 1e-12);
  EXPECT_NEAR(std::max(a, b), 0.75, 1e-12);
  EXPECT_THROW(basis_overlap(HalfInt::from_twice(3), HalfInt::from_twice(1), kHalf), DomainError);
  EXPECT_THROW(basis_overlap(HalfInt::from_twice(4), HalfInt::from_twice(0), kHalf), DomainError);
}

TEST(BasisOverlap, SfTwoSquaredElements) {
  for (int twice_s2 = 1; twice_s2 <= 6; ++twice_s2) {
    const HalfInt s2 = HalfInt::from_twice(twice_s2);
    const double q = s2.q();
    const Eigen::Matrix2d m = s_f2_squared_in_f1_basis(s2);
    EXPECT_NEAR(m(0, 0), 0.75 + q, 1e-12);
    EXPECT_NEAR(m(1, 1), q - 0.25, 1e-12);
    // Condon-Shortley gauge; flipping the sign of |s_f1 = 1> gives +sqrt(q).
    EXPECT_NEAR(m(0, 1), -std::sqrt(q), 1e-12);
    EXPECT_NEAR(m(1, 0), -std::sqrt(q), 1e-12);
  }
}

TEST(CoupledBasis, OrthonormalEigenbasis) {
  for (int n = 2; n <= 5; ++n) {
    const SpinOperatorSet ops = build_spin_operators(n);
    const CoupledBasis basis = coupled_basis(ops);
    const Eigen::Index d = ops.dimension();
    ASSERT_EQ(static_cast<Eigen::Index>(basis.labels.size()), d);
    EXPECT_LT(max_abs(basis.vectors.adjoint() * basis.vectors - Matrix::Identity(d, d)), 1e-12);
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;
    const Matrix s2 = dense(total_spin_squared(ops, all));
    const Matrix sz = dense(ops.total_component(all, Axis::z));
    for (std::size_t i = 0; i < basis.labels.size(); ++i) {
      const auto& l = basis.labels[i];
      const Vector v = basis.vectors.col(static_cast<Eigen::Index>(i));
      EXPECT_LT((s2 * v - l.s.q() * v).norm(), 1e-12);
      EXPECT_LT((sz * v - l.m.value() * v).norm(), 1e-12);
      EXPECT_LE(std::abs(l.m.twice()), l.s.twice());
      EXPECT_EQ(static_cast<int>(l.chain.size()), n - 2);
      for (std::size_t j = 0; j < l.chain.size(); ++j) {
        std::vector<int> prefix(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(j) + 2);
        const Matrix c = dense(total_spin_squared(ops, prefix));
        EXPECT_LT((c * v - l.chain[j].q() * v).norm(), 1e-12);
      }
    }
  }
}

TEST(BlockDecompose, IdentityAndReassembly) {
  const SpinOperatorSet ops = build_spin_operators(3);
  const auto blocks = block_decompose(ops, Matrix::Identity(8, 8));
  std::vector<Eigen::Index> sizes;
  for (const auto& b : blocks) {
    EXPECT_LT(max_abs(b.block - Matrix::Identity(b.block.rows(), b.block.cols())), 1e-12);
    sizes.push_back(b.block.rows());
  }
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<Eigen::Index>{1, 1, 1, 1, 2, 2}));

  // Random SU(2)-invariant matrix: polynomial in pair couplings.
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  const SpinOperatorSet ops4 = build_spin_operators(4);
  Matrix a = Matrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) a += cplx(nd(rng), nd(rng)) * dense(heisenberg_coupling(ops4, i, j));
  a = a * a + cplx(nd(rng), nd(rng)) * a;
  const auto b4 = block_decompose(ops4, a);
  EXPECT_LT(max_abs(reassemble(b4, 16) - a), 1e-12);
  // Equal s, different m: identical blocks.
  for (const auto& x : b4)
    for (const auto& y : b4)
      if (x.s == y.s) EXPECT_LT(max_abs(x.block - y.block), 1e-12);
}

TEST(BlockDecompose, RejectsNonInvariantMatrix) {
  const SpinOperatorSet ops = build_spin_operators(2);
  EXPECT_THROW(block_decompose(ops, dense(ops.component(0, Axis::x))), StructureError);
}

TEST(HalfIntType, Basics) {
  EXPECT_EQ(HalfInt::from_double(1.5).twice(), 3);
  EXPECT_THROW(HalfInt::from_double(0.3), DomainError);
  EXPECT_DOUBLE_EQ(HalfInt::from_twice(3).q(), 3.75);
  EXPECT_EQ(HalfInt::from_twice(3).str(), "3/2");
  EXPECT_EQ(HalfInt::from_twice(4).str(), "2");
}
