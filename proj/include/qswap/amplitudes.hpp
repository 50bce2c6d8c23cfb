#pragma once

// Closed-form scattering amplitudes for delta barriers in front of a hard
// wall, the design curves that make the mirror reflection a SWAP, and the
// operator-valued multiple-reflection composition.
//
// Everything is dimensionless: couplings enter as gamma = Gamma/k or
// g = G/k, distances as optical distances kd.

#include <vector>

#include "qswap/types.hpp"

namespace qswap {

struct BarrierAmplitudes {
  cplx r;
  cplx t;  // t = 1 + r
  double gamma;
};

// Delta barrier gamma*delta(x) without a mirror.
BarrierAmplitudes r0(double gamma);

struct ChannelGammas {
  double singlet;  // -3g/4
  double triplet;  // g/4
};
ChannelGammas channel_gammas(double g);

struct MirrorAmplitude {
  cplx r_m;
  double gamma;
  double kd;
};

// Barrier at optical distance kd in front of a hard wall, referenced at the
// barrier. |r_m| = 1.
MirrorAmplitude r_mirror(double gamma, double kd);

// Coupling at which singlet and triplet mirror amplitudes are opposite.
// Throws DivergenceError within 1e-8 of kd = n*pi.
double g_tilde(double kd);

// Optical distance of the next scatterer that turns the degenerate 2x2
// block into diag(1, -1): the smallest positive kd_2 with
// exp(2i kd_2) r_s^(m)(g_tilde(kd1)) = 1, lying in (0, pi]. `winding` >= 1
// selects the physically equivalent kd_2 + (winding - 1) pi.
double h_func(double kd1, int winding = 1);

// The kd_a roots in (0, pi) of g_tilde(kd) = g0: two for g0 > 1, one for
// g0 = 1. Throws ThresholdError for g0 < 1.
std::vector<double> g_tilde_roots(double g0);

inline constexpr double kThresholdCoupling = 1.0;

struct DesignPoint {
  double kd_a;
  double g;
  double kd_b;
};
DesignPoint design_point(double kd_a);

struct Block2Amplitudes {
  cplx r00;
  cplx r11;
  cplx r01;
  cplx delta;
};

// Entries of the degenerate s = s_2 block of the two-barrier reflection in
// the {|s_f1 = 0>, |s_f1 = 1>} basis, given a mirror-side reflection with
// r_t = -r_s. Throws SingularityError when Delta vanishes.
Block2Amplitudes block2_amplitudes(double g, double kd2, cplx r_s_m, double q_s2);

// Reflection of the effective barrier (G/2)(S_f2^2 - 3/4 - q) delta(x) in
// the {|s_f1 = 0>, |s_f1 = 1>} basis (gauge <0|S_f2^2|1> > 0).
Eigen::Matrix2cd rbar_f2(double g, double q_s2);

// Scatterer seen from two sides. "outer" faces the incoming particle, the
// "inner" side faces the mirror.
struct TwoPort {
  Matrix r_outer;    // reflection back to the outer side
  Matrix t_in;       // outer -> inner transmission
  Matrix t_out;      // inner -> outer transmission
  Matrix r_inner;    // reflection back to the inner side
};

// Two-port of the matrix delta barrier (M/k) delta(x); symmetric.
TwoPort delta_two_port(const Matrix& coupling_over_k);

// Outer two-port placed at optical distance kd from an inner reflector:
// r_outer + t_out (I - R e r_inner)^-1 R e t_in, with e = exp(2i kd).
// Throws SingularityError when the resolvent is singular.
Matrix terminate(const TwoPort& outer, const Matrix& r_inner_reflector, double kd);

// Star product: `outer` at optical distance kd in front of `inner`.
TwoPort star_product(const TwoPort& outer, const TwoPort& inner, double kd);

// Geometric series over multiple reflections between a symmetric outer
// scatterer (R_outer, T_outer) and an inner reflector, separated by kd:
// R_outer + T_outer (I - R_inner R_outer e)^-1 R_inner T_outer e.
Matrix compose_geometric(const Matrix& r_outer, const Matrix& t_outer, const Matrix& r_inner,
                         double kd);

}  // namespace qswap
