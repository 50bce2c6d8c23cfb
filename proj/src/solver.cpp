#include "qswap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace qswap {

namespace {

struct NormalizedProblem {
  Eigen::Index d;
  std::vector<double> positions;       // ascending
  std::vector<SparseMatrix> gammas;    // M_i / k
  bool mirror;
  double k;
  double reference;
};

NormalizedProblem normalize(const ScatteringProblem& p) {
  if (p.dimension < 1) throw InputError("scattering problem: dimension must be positive");
  if (!std::isfinite(p.k) || p.k <= 0.0) throw InputError("scattering problem: k must be positive");
  std::vector<const Site*> order;
  for (const auto& s : p.sites) {
    if (!std::isfinite(s.position)) throw InputError("scattering problem: non-finite position");
    if (s.coupling.rows() != p.dimension || s.coupling.cols() != p.dimension) {
      throw SizeError("scattering problem: coupling dimension mismatch");
    }
    const SparseMatrix herm = s.coupling - SparseMatrix(s.coupling.adjoint());
    double scale = 1.0;
    for (Eigen::Index c = 0; c < s.coupling.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(s.coupling, c); it; ++it) scale = std::max(scale, std::abs(it.value()));
    }
    double defect = 0.0;
    for (Eigen::Index c = 0; c < herm.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(herm, c); it; ++it) defect = std::max(defect, std::abs(it.value()));
    }
    if (defect > 1e-12 * scale) throw InputError("scattering problem: coupling is not Hermitian");
    order.push_back(&s);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Site* a, const Site* b) { return a->position < b->position; });

  NormalizedProblem n;
  n.d = p.dimension;
  n.mirror = p.mirror;
  n.k = p.k;
  for (const Site* s : order) {
    if (!n.positions.empty() && s->position - n.positions.back() < kMergeDistance) {
      n.gammas.back() += s->coupling / p.k;
      continue;
    }
    n.positions.push_back(s->position);
    n.gammas.push_back(s->coupling / p.k);
  }
  if (p.mirror && !n.positions.empty() && !(n.positions.back() < 0.0)) {
    throw InputError("scattering problem: barriers must lie strictly left of the mirror at x = 0");
  }
  n.reference = p.reference.value_or(n.positions.empty() ? 0.0 : n.positions.front());
  if (!std::isfinite(n.reference)) throw InputError("scattering problem: non-finite reference");
  return n;
}

cplx phase_at(const NormalizedProblem& n, double x) { return std::exp(kI * n.k * (x - n.reference)); }

ChannelOperators solve_matching(const NormalizedProblem& n) {
  const Eigen::Index d = n.d;
  const auto sites = static_cast<Eigen::Index>(n.positions.size());
  const Eigen::Index unknowns = d * (2 * sites + 1);
  const Matrix id = Matrix::Identity(d, d);

  // Unknown layout: b_0, then (a_j, b_j) for regions j = 1..S.
  auto col_a = [d](Eigen::Index region) { return d * (2 * region - 1); };
  auto col_b = [d](Eigen::Index region) { return region == 0 ? Eigen::Index{0} : d * (2 * region); };

  Matrix system = Matrix::Zero(unknowns, unknowns);
  Matrix rhs = Matrix::Zero(unknowns, d);

  for (Eigen::Index j = 0; j < sites; ++j) {
    const cplx u = phase_at(n, n.positions[static_cast<std::size_t>(j)]);
    const Matrix gamma = Matrix(n.gammas[static_cast<std::size_t>(j)]);
    const Eigen::Index cont = 2 * d * j;
    const Eigen::Index jump = cont + d;

    // Left region j.
    const Matrix a_cont = u * id, a_jump = (-kI * id - 2.0 * gamma) * u;
    const Matrix b_cont = id / u, b_jump = (kI * id - 2.0 * gamma) / u;
    if (j == 0) {
      rhs.middleRows(cont, d) = -a_cont;
      rhs.middleRows(jump, d) = -a_jump;
    } else {
      system.block(cont, col_a(j), d, d) = a_cont;
      system.block(jump, col_a(j), d, d) = a_jump;
    }
    system.block(cont, col_b(j), d, d) = b_cont;
    system.block(jump, col_b(j), d, d) = b_jump;

    // Right region j + 1.
    system.block(cont, col_a(j + 1), d, d) = -u * id;
    system.block(jump, col_a(j + 1), d, d) = kI * u * id;
    system.block(cont, col_b(j + 1), d, d) = -id / u;
    system.block(jump, col_b(j + 1), d, d) = -kI * id / u;
  }

  const Eigen::Index boundary = 2 * d * sites;
  if (n.mirror) {
    // phi(0) = 0.
    const cplx c_in = std::exp(-kI * n.k * n.reference);
    const cplx c_out = std::exp(kI * n.k * n.reference);
    if (sites == 0) {
      rhs.middleRows(boundary, d) = -c_in * id;
    } else {
      system.block(boundary, col_a(sites), d, d) = c_in * id;
    }
    system.block(boundary, col_b(sites), d, d) = c_out * id;
  } else {
    // Nothing comes back from the right.
    system.block(boundary, col_b(sites), d, d) = id;
  }

  Eigen::PartialPivLU<Matrix> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxConditionNumber > 1.0)) {
    throw DegenerateConfigurationError("matching system is ill-conditioned (condition number ~" +
                                           std::to_string(rcond > 0 ? 1.0 / rcond : INFINITY) + ")",
                                       rcond > 0 ? 1.0 / rcond : INFINITY);
  }
  const Matrix x = lu.solve(rhs);

  ChannelOperators out;
  out.R = x.middleRows(col_b(0), d);
  if (!n.mirror) out.T = x.middleRows(col_a(sites), d);
  return out;
}

ChannelOperators solve_transfer(const NormalizedProblem& n) {
  const Eigen::Index d = n.d;
  const Matrix id = Matrix::Identity(d, d);
  // Two fundamental solutions: (a_0, b_0) = (I, 0) and (0, I).
  Matrix a1 = id, b1 = Matrix::Zero(d, d);
  Matrix a2 = Matrix::Zero(d, d), b2 = id;

  auto cross = [&](Matrix& a, Matrix& b, const SparseMatrix& gamma, cplx u) {
    const Matrix big_a = a * u;
    const Matrix big_b = b / u;
    const Matrix kick = kI * (gamma * (big_a + big_b));
    a = (big_a - kick) / u;
    b = (big_b + kick) * u;
  };
  for (std::size_t j = 0; j < n.positions.size(); ++j) {
    const cplx u = phase_at(n, n.positions[j]);
    cross(a1, b1, n.gammas[j], u);
    cross(a2, b2, n.gammas[j], u);
  }

  Matrix lhs, rhs;
  if (n.mirror) {
    const cplx c_in = std::exp(-kI * n.k * n.reference);
    const cplx c_out = std::exp(kI * n.k * n.reference);
    lhs = c_in * a2 + c_out * b2;
    rhs = -(c_in * a1 + c_out * b1);
  } else {
    lhs = b2;
    rhs = -b1;
  }
  Eigen::PartialPivLU<Matrix> lu(lhs);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxConditionNumber > 1.0)) {
    throw DegenerateConfigurationError("transfer system is ill-conditioned",
                                       rcond > 0 ? 1.0 / rcond : INFINITY);
  }
  ChannelOperators out;
  out.R = lu.solve(rhs);
  if (!n.mirror) out.T = a1 + a2 * out.R;
  return out;
}

}  // namespace

ChannelOperators solve(const ScatteringProblem& problem, SolveMethod method) {
  const NormalizedProblem n = normalize(problem);
  if (!n.mirror && n.positions.empty()) {
    const Matrix id = Matrix::Identity(n.d, n.d);
    return {Matrix::Zero(n.d, n.d), id};
  }
  if (method == SolveMethod::automatic) {
    const Eigen::Index unknowns = n.d * (2 * static_cast<Eigen::Index>(n.positions.size()) + 1);
    method = unknowns <= kMaxMatchingUnknowns ? SolveMethod::matching : SolveMethod::transfer;
  }
  return method == SolveMethod::transfer ? solve_transfer(n) : solve_matching(n);
}

Matrix apply_kraus(const ChannelOperators& channel, const Matrix& rho) {
  const Eigen::Index d = channel.R.rows();
  if (rho.rows() != d || rho.cols() != d) throw SizeError("apply_kraus: density matrix dimension mismatch");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("apply_kraus: density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InputError("apply_kraus: density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InputError("apply_kraus: density matrix is not positive semidefinite");
  }
  Matrix out = channel.R * rho * channel.R.adjoint();
  if (channel.T) out += *channel.T * rho * channel.T->adjoint();
  return out;
}

double flux_defect(const ChannelOperators& channel) {
  const Eigen::Index d = channel.R.rows();
  Matrix sum = channel.R.adjoint() * channel.R;
  if (channel.T) sum += channel.T->adjoint() * *channel.T;
  double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!channel.T) {
    defect = std::max(defect, (channel.R * channel.R.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
  }
  return defect;
}

}  // namespace qswap
