#include <gtest/gtest.h>

#include <cmath>

#include "qswap/amplitudes.hpp"
#include "qswap/protocol.hpp"

using namespace qswap;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<double> kd_grid(int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(0.2 + (kPi - 0.4) * i / (count - 1));
  return out;
}

}  // namespace

TEST(Design, Examples) {
  const double g = 2 / std::sqrt(3.0);
  RegisterConfig c = design_register(2, 1, kPi / 2);
  ASSERT_EQ(c.kd.size(), 2u);
  EXPECT_NEAR(c.kd[0], kPi / 2, 1e-14);
  EXPECT_NEAR(c.kd[1], 2 * kPi / 3, 1e-14);
  EXPECT_NEAR(c.g, g, 1e-14);

  c = design_register(2, 2, kPi / 2);
  EXPECT_NEAR(c.kd[0], kPi, 1e-14);
  EXPECT_NEAR(c.kd[1], kPi / 2, 1e-14);
  EXPECT_NEAR(c.g, g, 1e-14);

  c = design_register(4, 2, kPi / 2);
  const std::vector<double> expected{kPi, kPi / 2, 2 * kPi / 3, kPi};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c.kd[i], expected[i], 1e-14);
  EXPECT_EQ(c.target, 2);
  EXPECT_EQ(c.n_static, 4);
}

TEST(Design, WindingsShiftSlotsByPi) {
  const RegisterConfig c = design_register(4, 2, 0.9, {2, 3, 2, 4});
  EXPECT_NEAR(c.kd[0], 2 * kPi, 1e-14);
  EXPECT_NEAR(c.kd[1], 0.9 + 2 * kPi, 1e-14);
  EXPECT_NEAR(c.kd[2], h_func(0.9) + kPi, 1e-14);
  EXPECT_NEAR(c.kd[3], 4 * kPi, 1e-14);
  EXPECT_THROW(design_register(2, 1, 0.9, {1}), DesignError);
  EXPECT_THROW(design_register(2, 1, 0.9, {1, 0}), DesignError);
}

TEST(Design, Errors) {
  EXPECT_THROW(design_register(2, 1, kPi), DesignError);
  EXPECT_THROW(design_register(2, 1, 2 * kPi + 1e-9), DesignError);
  EXPECT_THROW(design_register(2, 1, -0.5), DesignError);
  EXPECT_THROW(design_register(2, 3, 1.0), IndexError);
  EXPECT_THROW(design_register(0, 1, 1.0), SizeError);
}

TEST(Design, ThresholdNeverUndercut) {
  EXPECT_NEAR(design_register(1, 1, std::atan2(1.0, 0.5)).g, 1.0, 1e-10);
  for (double kd : kd_grid(200)) EXPECT_GE(design_register(3, 1, kd).g, 1.0);
}

TEST(GateFidelityTest, Examples) {
  const SpinOperatorSet ops = build_spin_operators(2);
  const Matrix w = Matrix(swap_operator(ops, 0, 1));
  GateFidelity f = gate_fidelity(w, w);
  EXPECT_NEAR(f.fidelity, 1.0, 1e-15);
  EXPECT_NEAR(f.phase, 0.0, 1e-15);
  f = gate_fidelity(w, std::exp(kI * kPi / 5.0) * w);
  EXPECT_NEAR(f.fidelity, 1.0, 1e-15);
  EXPECT_NEAR(f.phase, kPi / 5, 1e-15);
  EXPECT_NEAR(gate_fidelity(w, -Matrix::Identity(4, 4)).fidelity, 0.5, 1e-15);
  EXPECT_THROW(gate_fidelity(w, 2.0 * w), InputError);
  EXPECT_THROW(gate_fidelity(w, Matrix::Identity(2, 2)), SizeError);
}

TEST(Verify, SingleQubitDesignCurve) {
  for (double kd : kd_grid(20)) {
    const FidelityReport r = verify_swap(design_register(1, 1, kd));
    EXPECT_GE(r.fidelity, 1 - 1e-10) << kd;
    EXPECT_TRUE(r.bystanders.empty());
  }
  const FidelityReport half = verify_swap(design_register(1, 1, kPi / 2));
  EXPECT_NEAR(half.optimal_phase, -kPi / 3, 1e-12);
  EXPECT_EQ(half.target_unitary, "SWAP(f, SQ_1)");
}

TEST(Verify, AllDesignsUpToFourQubits) {
  for (int n = 2; n <= 4; ++n) {
    for (int nu = 1; nu <= n; ++nu) {
      for (double kd : kd_grid(20)) {
        const FidelityReport r = verify_swap(design_register(n, nu, kd));
        EXPECT_GE(r.fidelity, 1 - 1e-8) << n << ' ' << nu << ' ' << kd;
        EXPECT_NEAR(r.process_fidelity, r.fidelity * r.fidelity, 1e-15);
        ASSERT_EQ(static_cast<int>(r.bystanders.size()), n - 1);
        for (const auto& b : r.bystanders) {
          EXPECT_NE(b.qubit, nu);
          EXPECT_LE(b.choi_distance, 1e-8);
        }
      }
    }
  }
}

TEST(Verify, FiveQubitsSampled) {
  for (int nu = 1; nu <= 5; ++nu) {
    for (double kd : {0.7, 2.2}) EXPECT_GE(verify_swap(design_register(5, nu, kd)).fidelity, 1 - 1e-8);
  }
}

TEST(Verify, WindingInvariance) {
  for (int nu = 1; nu <= 3; ++nu) {
    const std::vector<int> w{2, 2, 3};
    EXPECT_GE(verify_swap(design_register(3, nu, 1.3, w)).fidelity, 1 - 1e-8);
  }
}

TEST(Verify, PerturbedDesignRegression) {
  RegisterConfig c = design_register(2, 1, kPi / 2);
  c.kd[1] += 0.3;
  const FidelityReport r = verify_swap(c);
  EXPECT_NEAR(r.fidelity, 0.852032889718717, 1e-9);
  EXPECT_NEAR(r.bystanders.at(0).choi_distance, 0.211432151243860, 1e-9);
}

TEST(Verify, MergedSingleQubitIsMinusIdentity) {
  RegisterConfig c = design_register(1, 1, kPi / 2);
  c.kd[0] = 3 * kPi;
  EXPECT_NEAR(verify_swap(c).fidelity, 0.5, 1e-12);
}

TEST(Verify, RejectsInvalidConfigs) {
  RegisterConfig c = design_register(2, 1, 1.0);
  c.kd.pop_back();
  EXPECT_THROW(verify_swap(c), InputError);
  c = design_register(2, 1, 1.0);
  c.kd[0] = -1.0;
  EXPECT_THROW(verify_swap(c), InputError);
  c = design_register(2, 1, 1.0);
  c.target = 0;
  EXPECT_THROW(verify_swap(c), IndexError);
  c = design_register(2, 1, 1.0);
  c.couplings = {1.0};
  EXPECT_THROW(verify_swap(c), InputError);
}

TEST(InducedMap, IdentityAndSwap) {
  EXPECT_NEAR(induced_map_distance(Matrix::Identity(8, 8), 3, 1), 0.0, 1e-15);
  const SpinOperatorSet ops = build_spin_operators(2);
  // The swap replaces the qubit by a maximally mixed state.
  EXPECT_NEAR(induced_map_distance(Matrix(swap_operator(ops, 0, 1)), 2, 1), 0.75, 1e-14);
}

TEST(Independence, RoleBasedReplacements) {
  const double strengths[] = {0.0, 0.5, 7.3};
  // Outer barrier next to the target.
  for (auto [n, nu] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    const RegisterConfig c = design_register(n, nu, 1.1);
    for (double s : strengths) EXPECT_GE(independence_check(c, nu + 1, s).fidelity, 1 - 1e-10) << n << nu << s;
  }
  // Mirror-merged sites and the co-located group.
  const RegisterConfig c = design_register(4, 2, 2.4);
  for (double s : strengths) {
    EXPECT_GE(independence_check(c, 1, s).fidelity, 1 - 1e-10);
    EXPECT_GE(independence_check(c, 4, s).fidelity, 1 - 1e-10);
  }
  // N = 3, nu = 1: tenfold coupling on site 3.
  const RegisterConfig c3 = design_register(3, 1, kPi / 2);
  EXPECT_GE(independence_check(c3, 3, 10 * c3.g).fidelity, 1 - 1e-10);
}

TEST(Independence, Errors) {
  RegisterConfig c = design_register(3, 2, 1.0);
  EXPECT_THROW(independence_check(c, 2, 1.0), IndexError);
  EXPECT_THROW(independence_check(c, 4, 1.0), IndexError);
  c.kd[0] = 2.0;  // site 1 no longer merged into the mirror
  EXPECT_THROW(independence_check(c, 1, 1.0), IndexError);
  RegisterConfig d = design_register(4, 1, 1.0);
  d.kd[3] = 1.0;
  EXPECT_THROW(independence_check(d, 4, 1.0), IndexError);
}

TEST(EffectiveSpin, Spectra) {
  EXPECT_TRUE(effective_spin_spectrum(3, 3).empty());
  auto two = effective_spin_spectrum(3, 1);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].s_eff.twice(), 0);
  EXPECT_EQ(two[0].multiplicity, 1);
  EXPECT_EQ(two[1].s_eff.twice(), 2);
  EXPECT_EQ(two[1].multiplicity, 1);
  auto three = effective_spin_spectrum(4, 1);
  ASSERT_EQ(three.size(), 2u);
  EXPECT_EQ(three[0].s_eff.twice(), 1);
  EXPECT_EQ(three[0].multiplicity, 2);
  EXPECT_EQ(three[1].s_eff.twice(), 3);
  EXPECT_EQ(three[1].multiplicity, 1);
  for (int n = 1; n <= 10; ++n) {
    int dim = 0;
    for (const auto& e : effective_spin_spectrum(n, 0)) dim += e.multiplicity * (e.s_eff.twice() + 1);
    EXPECT_EQ(dim, 1 << n);
  }
  EXPECT_THROW(effective_spin_spectrum(2, 3), IndexError);
}

TEST(SwapBlock, MatchesClosedFormWithEffectiveSpin) {
  for (auto [n, nu] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {4, 2}}) {
    for (double kd : {0.6, 1.9}) {
      RegisterConfig c = design_register(n, nu, kd);
      c.kd[static_cast<std::size_t>(nu)] += 0.37;  // off the diagonalizing distance
      const SpinOperatorSet ops = build_spin_operators(n + 1);
      const Matrix r = solve(build_problem(c, ops)).R;
      const Eigen::Matrix2cd block = swap_block(c, ops, r);
      const cplx rs = r_mirror(channel_gammas(c.g).singlet, kd).r_m;
      const double q = HalfInt::from_twice(n - nu).q();
      const Block2Amplitudes expected = block2_amplitudes(c.g, c.kd[static_cast<std::size_t>(nu)], rs, q);
      EXPECT_NEAR(std::abs(block(0, 0) - expected.r00), 0.0, 1e-10) << n << nu << kd;
      EXPECT_NEAR(std::abs(block(1, 1) - expected.r11), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(block(0, 1) - expected.r01), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(block(1, 0) - expected.r01), 0.0, 1e-10);
    }
  }
  const RegisterConfig last = design_register(2, 2, 1.0);
  const SpinOperatorSet ops = build_spin_operators(3);
  EXPECT_THROW(swap_block(last, ops, Matrix::Identity(8, 8)), IndexError);
}

TEST(Problem, PositionsAndCouplings) {
  RegisterConfig c = design_register(3, 1, 1.0);
  const auto x = site_positions(c);
  EXPECT_NEAR(x[0], -c.kd[0], 1e-15);
  EXPECT_NEAR(x[2], -(c.kd[0] + c.kd[1] + c.kd[2]), 1e-14);
  c.couplings = {1.0, 2.0, 3.0};
  EXPECT_EQ(c.coupling(2), 2.0);
  EXPECT_THROW(c.coupling(4), IndexError);
  const SpinOperatorSet ops = build_spin_operators(4);
  const ScatteringProblem p = build_problem(c, ops, 2.0);
  EXPECT_EQ(p.k, 2.0);
  EXPECT_EQ(p.sites.size(), 3u);
  EXPECT_LT(max_abs(Matrix(p.sites[2].coupling) - 3.0 * Matrix(heisenberg_coupling(ops, 0, 3))), 1e-15);
  EXPECT_THROW(build_problem(c, build_spin_operators(3)), SizeError);
}
