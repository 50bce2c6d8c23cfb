#include "qswap/protocol.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qswap/amplitudes.hpp"

namespace qswap {

namespace {

constexpr double kMergedTolerance = 1e-9;

bool is_multiple_of_pi(double kd) {
  const double n = std::round(kd / kPi);
  return n >= 1.0 && std::abs(kd - n * kPi) < kMergedTolerance;
}

std::string swap_name(const RegisterConfig& config) {
  return "SWAP(f, SQ_" + std::to_string(config.target) + ")";
}

// Column/row index of the computational state with `qubit` set to `bit` and
// the remaining qubits given by `rest` (in order, most significant first).
Eigen::Index embed(int n, int qubit, int bit, Eigen::Index rest) {
  const int low_bits = n - 1 - qubit;
  const Eigen::Index low = rest & ((Eigen::Index{1} << low_bits) - 1);
  const Eigen::Index high = rest >> low_bits;
  return (((high << 1) | bit) << low_bits) | low;
}

FidelityReport report_for(const RegisterConfig& config, const SpinOperatorSet& ops,
                          const Matrix& reflection) {
  const Matrix target = target_unitary(config, ops);
  const GateFidelity gf = gate_fidelity(target, reflection);
  FidelityReport report;
  report.fidelity = gf.fidelity;
  report.process_fidelity = gf.fidelity * gf.fidelity;
  report.optimal_phase = gf.phase;
  report.target_unitary = swap_name(config);
  for (int q = 1; q <= config.n_static; ++q) {
    if (q == config.target) continue;
    report.bystanders.push_back({q, induced_map_distance(reflection, ops.n_qubits(), q)});
  }
  return report;
}

}  // namespace

double RegisterConfig::coupling(int site) const {
  if (site < 1 || site > n_static) throw IndexError("coupling: site out of range");
  return couplings.empty() ? g : couplings[static_cast<std::size_t>(site - 1)];
}

void validate(const RegisterConfig& config) {
  if (config.n_static < 1 || config.n_static + 1 > kMaxQubits) {
    throw SizeError("register size N must be in [1, " + std::to_string(kMaxQubits - 1) + "]");
  }
  const auto n = static_cast<std::size_t>(config.n_static);
  if (config.kd.size() != n) throw InputError("kd must list one optical distance per static qubit");
  for (double kd : config.kd) {
    if (!std::isfinite(kd) || kd <= 0.0) throw InputError("optical distances must be positive");
  }
  if (!std::isfinite(config.g)) throw InputError("coupling g must be finite");
  if (config.target < 1 || config.target > config.n_static) {
    throw IndexError("target must be in 1..N");
  }
  if (!config.windings.empty()) {
    if (config.windings.size() != n) throw InputError("windings must have one entry per slot");
    for (int w : config.windings) {
      if (w < 1) throw InputError("windings must be >= 1");
    }
  }
  if (!config.couplings.empty() && config.couplings.size() != n) {
    throw InputError("couplings must be empty or list one value per static qubit");
  }
}

std::vector<double> site_positions(const RegisterConfig& config) {
  std::vector<double> x;
  double acc = 0.0;
  for (double kd : config.kd) {
    acc += kd;
    x.push_back(-acc);
  }
  return x;
}

ScatteringProblem build_problem(const RegisterConfig& config, const SpinOperatorSet& ops, double k,
                                const std::optional<std::vector<double>>& positions) {
  validate(config);
  if (ops.n_qubits() != config.n_static + 1) throw SizeError("operator set does not match the register");
  const std::vector<double> x = positions.value_or(site_positions(config));
  if (x.size() != config.kd.size()) throw SizeError("one position per static qubit required");
  ScatteringProblem problem;
  problem.dimension = ops.dimension();
  problem.mirror = true;
  problem.k = k;
  for (int i = 1; i <= config.n_static; ++i) {
    problem.sites.push_back({x[static_cast<std::size_t>(i - 1)],
                             config.coupling(i) * heisenberg_coupling(ops, 0, i)});
  }
  return problem;
}

Matrix target_unitary(const RegisterConfig& config, const SpinOperatorSet& ops) {
  return Matrix(swap_operator(ops, 0, config.target));
}

RegisterConfig design_register(int n_static, int target, double kd_a, std::vector<int> windings) {
  if (n_static < 1 || n_static + 1 > kMaxQubits) throw SizeError("register size out of range");
  if (target < 1 || target > n_static) throw IndexError("target must be in 1..N");
  if (!std::isfinite(kd_a) || kd_a <= 0.0 ||
      std::abs(kd_a - kPi * std::round(kd_a / kPi)) < 1e-8) {
    throw DesignError("kd_a = " + std::to_string(kd_a) +
                      " must be positive and away from multiples of pi");
  }
  if (windings.empty()) windings.assign(static_cast<std::size_t>(n_static), 1);
  if (windings.size() != static_cast<std::size_t>(n_static)) {
    throw DesignError("windings must have one entry per slot");
  }
  for (int w : windings) {
    if (w < 1) throw DesignError("windings must be >= 1");
  }

  RegisterConfig config;
  config.n_static = n_static;
  config.target = target;
  config.windings = windings;
  config.g = g_tilde(kd_a);
  for (int i = 1; i <= n_static; ++i) {
    const int n_i = windings[static_cast<std::size_t>(i - 1)];
    if (i == target) {
      config.kd.push_back(kd_a + (n_i - 1) * kPi);
    } else if (i == target + 1) {
      config.kd.push_back(h_func(kd_a, n_i));
    } else {
      config.kd.push_back(n_i * kPi);
    }
  }
  return config;
}

GateFidelity gate_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
    throw SizeError("gate_fidelity: matrices must be square and of equal size");
  }
  const Eigen::Index d = u.rows();
  const Matrix id = Matrix::Identity(d, d);
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-10 ||
      (v.adjoint() * v - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("gate_fidelity: inputs must be unitary");
  }
  const cplx overlap = (u.adjoint() * v).trace();
  return {std::abs(overlap) / static_cast<double>(d), std::arg(overlap)};
}

double induced_map_distance(const Matrix& unitary, int n_qubits, int qubit) {
  const Eigen::Index rest_dim = Eigen::Index{1} << (n_qubits - 1);
  const double norm = 1.0 / static_cast<double>(rest_dim);
  // choi((a,c),(b,e)) = 1/2 E(|a><b|)_{ce}
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int e = 0; e < 2; ++e) {
          cplx sum = 0.0;
          for (Eigen::Index o = 0; o < rest_dim; ++o) {
            const Eigen::Index col_a = embed(n_qubits, qubit, a, o);
            const Eigen::Index col_b = embed(n_qubits, qubit, b, o);
            for (Eigen::Index o2 = 0; o2 < rest_dim; ++o2) {
              sum += unitary(embed(n_qubits, qubit, c, o2), col_a) *
                     std::conj(unitary(embed(n_qubits, qubit, e, o2), col_b));
            }
          }
          choi(2 * a + c, 2 * b + e) = 0.5 * norm * sum;
        }
      }
    }
  }
  Eigen::Matrix4cd ideal = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) ideal(3 * a, 3 * b) = 0.5;
  }
  const Eigen::Matrix4cd diff = choi - ideal;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (diff + diff.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

FidelityReport verify_swap(const RegisterConfig& config) {
  validate(config);
  const SpinOperatorSet ops = build_spin_operators(config.n_static + 1);
  const ChannelOperators channel = solve(build_problem(config, ops));
  return report_for(config, ops, channel.R);
}

FidelityReport independence_check(const RegisterConfig& config, int site_index,
                                  double replacement_strength) {
  validate(config);
  const int nu = config.target;
  if (site_index < 1 || site_index > config.n_static) throw IndexError("site index out of range");
  if (site_index == nu) throw IndexError("the target qubit is not part of a merged group");
  if (!std::isfinite(replacement_strength)) throw InputError("replacement strength must be finite");

  const SpinOperatorSet ops = build_spin_operators(config.n_static + 1);
  ScatteringProblem problem = build_problem(config, ops);
  auto& site = problem.sites[static_cast<std::size_t>(site_index - 1)];
  const double k = problem.k;

  if (site_index < nu) {
    for (int j = 1; j <= site_index; ++j) {
      if (!is_multiple_of_pi(config.kd[static_cast<std::size_t>(j - 1)])) {
        throw IndexError("site " + std::to_string(site_index) + " is not merged into the mirror");
      }
    }
    site.coupling = replacement_strength * k * ops.identity();
  } else if (site_index == nu + 1) {
    const int trio[3] = {0, nu, nu + 1};
    const SparseMatrix quartet = (total_spin_squared(ops, trio) - 0.75 * ops.identity()) / 3.0;
    site.coupling += (replacement_strength - 0.25 * config.coupling(site_index)) * k * quartet;
  } else {
    for (int j = nu + 2; j <= site_index; ++j) {
      if (!is_multiple_of_pi(config.kd[static_cast<std::size_t>(j - 1)])) {
        throw IndexError("site " + std::to_string(site_index) + " is not co-located with SQ_" +
                         std::to_string(nu + 1));
      }
    }
    site.coupling = replacement_strength * k * heisenberg_coupling(ops, 0, site_index);
  }
  const ChannelOperators channel = solve(problem);
  return report_for(config, ops, channel.R);
}

std::vector<EffectiveSpin> effective_spin_spectrum(int n_static, int target) {
  const int n = n_static - target;
  if (n < 0) throw IndexError("effective_spin_spectrum: target beyond the register");
  std::vector<EffectiveSpin> out;
  if (n == 0) return out;
  auto binom = [](int top, int bottom) {
    if (bottom < 0 || bottom > top) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
    return r;
  };
  for (int twice_s = n % 2; twice_s <= n; twice_s += 2) {
    const int down = (n - twice_s) / 2;
    const auto mult = static_cast<int>(std::lround(binom(n, down) - binom(n, down - 1)));
    out.push_back({HalfInt::from_twice(twice_s), mult});
  }
  return out;
}

Eigen::Matrix2cd swap_block(const RegisterConfig& config, const SpinOperatorSet& ops,
                            const Matrix& reflection) {
  validate(config);
  const int nu = config.target;
  const int n = config.n_static;
  if (nu >= n) throw IndexError("swap_block needs static qubits beyond the target");
  const int n_qubits = ops.n_qubits();
  const Eigen::Index bit_f = Eigen::Index{1} << (n_qubits - 1);
  const Eigen::Index bit_nu = Eigen::Index{1} << (n_qubits - 1 - nu);
  Vector zero = Vector::Zero(ops.dimension());
  zero(bit_nu) = 1.0 / std::sqrt(2.0);   // f up, nu down
  zero(bit_f) = -1.0 / std::sqrt(2.0);   // f down, nu up

  std::vector<int> group;
  for (int i = nu + 1; i <= n; ++i) group.push_back(i);
  const int f[1] = {0};
  const HalfInt s_eff = HalfInt::from_twice(static_cast<int>(group.size()));
  const Vector one = 2.0 * (group_coupling(ops, f, group) * zero) / std::sqrt(s_eff.q());

  Eigen::Matrix2cd block;
  const Vector* basis[2] = {&zero, &one};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) block(r, c) = basis[r]->dot(reflection * *basis[c]);
  }
  return block;
}

}  // namespace qswap
