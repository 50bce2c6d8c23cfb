#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qswap {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Error hierarchy. Everything thrown by the library derives from Error so
// front ends can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};
class SizeError : public InputError {
 public:
  using InputError::InputError;
};
class IndexError : public InputError {
 public:
  using InputError::InputError;
};
class DomainError : public InputError {
 public:
  using InputError::InputError;
};
class DesignError : public InputError {
 public:
  using InputError::InputError;
};
class ThresholdError : public InputError {
 public:
  using InputError::InputError;
};
// Malformed or unsupported serialized document.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

// Divergent design function near kd = n*pi.
class DivergenceError : public InputError {
 public:
  using InputError::InputError;
};

// Matrix does not have the symmetry an operation relies on.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Numerical degeneracy: vanishing denominators, singular resolvents,
// ill-conditioned matching systems.
class NumericalError : public Error {
 public:
  using Error::Error;
};
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class DegenerateConfigurationError : public NumericalError {
 public:
  DegenerateConfigurationError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition_number() const { return condition_; }

 private:
  double condition_;
};

// A spin quantum number j stored as the integer 2j.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  // Throws DomainError unless 2*x is an integer (to 1e-9).
  static HalfInt from_double(double x);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  // q_j = j(j+1), the eigenvalue of the squared spin.
  constexpr double q() const { return value() * (value() + 1.0); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }

  std::string str() const;

 private:
  int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

}  // namespace qswap
