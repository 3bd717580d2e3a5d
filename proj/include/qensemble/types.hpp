// Shared scalar/matrix aliases, numeric tolerances and the error taxonomy.
#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qensemble {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Construction-time invariants (norms, hermiticity, trace).
inline constexpr double kStateTol = 1e-10;
// Orthonormality of measurement bases (Gram matrix vs identity).
inline constexpr double kGramTol = 1e-9;
// Probability vectors and click columns must sum to one within this.
inline constexpr double kProbTol = 1e-9;
// Weights below this contribute nothing to an entropy sum (0*log 0 cutoff).
inline constexpr double kEntropyClamp = 1e-12;
// Eigenvalue threshold when projecting onto the support of an operator.
inline constexpr double kSupportEigTol = 1e-10;
// Default threshold for keeping a basis vector in a support-overlap filter.
inline constexpr double kOverlapTolDefault = 1e-9;
// Smallest average-state eigenvalue for an ensemble to count as full span.
inline constexpr double kFullSpanEigTol = 1e-9;
// Default gap below which an upper bound is certified as the exact value.
inline constexpr double kCertifyTolDefault = 1e-4;

// Base class for every failure this library raises on purpose.  Callers that
// want a single catch site can catch QError; the subclasses identify what was
// violated.
class QError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose dimensions cannot be combined (vector vs basis, partition
// product vs ambient dimension, ...).
class DimensionMismatch : public QError {
 public:
  using QError::QError;
};

// A numeric argument is outside its mathematical domain (probability not in
// [0,1], non-positive dimension, ...).
class DomainError : public QError {
 public:
  using QError::QError;
};

// A vector or operator fails its normalization invariant.
class NormViolation : public QError {
 public:
  using QError::QError;
};

// A computation that only makes sense for pure states met a mixed one.
class NotPure : public QError {
 public:
  using QError::QError;
};

// An ensemble does not span the ambient space but the operation requires it.
class NotFullSpan : public QError {
 public:
  using QError::QError;
};

// A bipartite/local operation was requested without a subsystem partition.
class MissingPartition : public QError {
 public:
  using QError::QError;
};

// POVM elements that are not positive semidefinite or do not resolve identity.
class InvalidPovm : public QError {
 public:
  using QError::QError;
};

// A documented precondition of an operation does not hold.
class PreconditionViolation : public QError {
 public:
  using QError::QError;
};

// Malformed input files (ensemble/basis JSON).
class ParseError : public QError {
 public:
  using QError::QError;
};

}  // namespace qensemble
