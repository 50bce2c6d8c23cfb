#include "qswap/amplitudes.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace qswap {

namespace {

constexpr double kSingularDistance = 1e-8;

void check_not_multiple_of_pi(double kd, const char* what) {
  const double dist = std::abs(kd - kPi * std::round(kd / kPi));
  if (!std::isfinite(kd) || dist < kSingularDistance) {
    throw DivergenceError(std::string(what) + ": kd = " + std::to_string(kd) +
                          " is within 1e-8 of a multiple of pi (infinite coupling needed)");
  }
}

Matrix solve_resolvent(const Matrix& a, const Matrix& rhs, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(a);
  if (!(lu.rcond() > 1e-14)) {
    throw SingularityError(std::string(what) + ": singular resolvent");
  }
  return lu.solve(rhs);
}

}  // namespace

BarrierAmplitudes r0(double gamma) {
  const cplx r = -kI * gamma / (1.0 + kI * gamma);
  return {r, 1.0 + r, gamma};
}

ChannelGammas channel_gammas(double g) { return {-0.75 * g, 0.25 * g}; }

MirrorAmplitude r_mirror(double gamma, double kd) {
  const cplx e = std::exp(2.0 * kI * kd);
  const cplx den = 1.0 + kI * gamma * (1.0 - e);
  if (std::abs(den) < 1e-300) throw SingularityError("r_mirror: vanishing denominator");
  return {-(kI * gamma + (1.0 - kI * gamma) * e) / den, gamma, kd};
}

double g_tilde(double kd) {
  check_not_multiple_of_pi(kd, "g_tilde");
  const double c = std::cos(kd) / std::sin(kd);
  const double g = (2.0 / 3.0) * (std::sqrt(3.0 + 4.0 * c * c) - c);
  // The curve's minimum is exactly 1; keep round-off from dipping below it.
  return std::max(kThresholdCoupling, g);
}

double h_func(double kd1, int winding) {
  if (winding < 1) throw DomainError("h_func: winding must be >= 1");
  const double g = g_tilde(kd1);
  const cplx r_s = r_mirror(channel_gammas(g).singlet, kd1).r_m;
  double h = -0.5 * std::arg(r_s);
  if (h <= 0.0) h += kPi;
  return h + (winding - 1) * kPi;
}

std::vector<double> g_tilde_roots(double g0) {
  if (!std::isfinite(g0) || g0 < kThresholdCoupling - 1e-12) {
    throw ThresholdError("coupling g0 = " + std::to_string(g0) + " is below the threshold g_th = 1");
  }
  // g_tilde(kd) = g0  <=>  cot(kd) = g0/2 +- sqrt(g0^2 - 1).
  if (g0 <= kThresholdCoupling + 1e-12) return {std::atan2(1.0, 0.5)};
  const double root = std::sqrt(g0 * g0 - 1.0);
  return {std::atan2(1.0, 0.5 * g0 + root), std::atan2(1.0, 0.5 * g0 - root)};
}

DesignPoint design_point(double kd_a) { return {kd_a, g_tilde(kd_a), h_func(kd_a)}; }

Block2Amplitudes block2_amplitudes(double g, double kd2, cplx r_s_m, double q_s2) {
  const cplx x = r_s_m * std::exp(2.0 * kI * kd2);
  const cplx x2 = x * x;
  const double sq = std::sqrt(q_s2);
  const cplx delta = -4.0 + kI * g * (1.0 - x) * (2.0 + kI * q_s2 * g * (1.0 + x));
  if (std::abs(delta) < 1e-14) throw SingularityError("block2_amplitudes: Delta vanishes");
  Block2Amplitudes out;
  out.delta = delta;
  out.r00 = (g * g * q_s2 - 2.0 * (2.0 - kI * g) * x - kI * g * (2.0 - kI * q_s2 * g) * x2) / delta;
  out.r11 = -(kI * g * (2.0 + kI * q_s2 * g) - 2.0 * (2.0 + kI * g) * x + q_s2 * g * g * x2) / delta;
  out.r01 = 2.0 * kI * sq * g * (1.0 - x2) / delta;
  return out;
}

Eigen::Matrix2cd rbar_f2(double g, double q_s2) {
  const cplx delta = -4.0 + 2.0 * kI * g - q_s2 * g * g;
  if (std::abs(delta) < 1e-14) throw SingularityError("rbar_f2: Delta_s2 vanishes");
  Eigen::Matrix2cd r;
  r(0, 0) = q_s2 * g * g / delta;
  r(1, 1) = -kI * g * (2.0 + kI * q_s2 * g) / delta;
  r(0, 1) = 2.0 * kI * std::sqrt(q_s2) * g / delta;
  r(1, 0) = r(0, 1);
  return r;
}

TwoPort delta_two_port(const Matrix& coupling_over_k) {
  const Eigen::Index d = coupling_over_k.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix t = solve_resolvent(id + kI * coupling_over_k, id, "delta_two_port");
  const Matrix r = t - id;
  return {r, t, t, r};
}

Matrix terminate(const TwoPort& outer, const Matrix& r_inner_reflector, double kd) {
  const Eigen::Index d = outer.r_outer.rows();
  const Matrix re = r_inner_reflector * std::exp(2.0 * kI * kd);
  const Matrix resolvent = Matrix::Identity(d, d) - re * outer.r_inner;
  return outer.r_outer + outer.t_out * solve_resolvent(resolvent, re * outer.t_in, "terminate");
}

TwoPort star_product(const TwoPort& outer, const TwoPort& inner, double kd) {
  const Eigen::Index d = outer.r_outer.rows();
  const Matrix id = Matrix::Identity(d, d);
  const cplx p = std::exp(kI * kd);
  const cplx p2 = p * p;
  // Inward wave at the inner scatterer / outward wave at the inner scatterer.
  const Matrix inward = id - p2 * outer.r_inner * inner.r_outer;
  const Matrix outward = id - p2 * inner.r_outer * outer.r_inner;

  TwoPort out;
  out.r_outer = terminate(outer, inner.r_outer, kd);
  out.t_in = inner.t_in * solve_resolvent(inward, p * outer.t_in, "star_product");
  out.t_out = p * outer.t_out * solve_resolvent(outward, inner.t_out, "star_product");
  out.r_inner = inner.r_inner + inner.t_in * solve_resolvent(inward, p2 * outer.r_inner * inner.t_out,
                                                             "star_product");
  return out;
}

Matrix compose_geometric(const Matrix& r_outer, const Matrix& t_outer, const Matrix& r_inner,
                         double kd) {
  const Eigen::Index d = r_outer.rows();
  if (r_outer.cols() != d || t_outer.rows() != d || t_outer.cols() != d || r_inner.rows() != d ||
      r_inner.cols() != d) {
    throw SizeError("compose_geometric: operator dimensions differ");
  }
  const cplx e = std::exp(2.0 * kI * kd);
  const Matrix resolvent = Matrix::Identity(d, d) - r_inner * r_outer * e;
  Eigen::PartialPivLU<Matrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14)) throw SingularityError("compose_geometric: singular resolvent");
  return r_outer + t_outer * lu.solve(r_inner * t_outer * e);
}

}  // namespace qswap
