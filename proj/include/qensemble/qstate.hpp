// State-space primitives: pure states, density operators, subsystem
// partitions and weighted ensembles, plus tensor products, partial traces
// and Schmidt spectra.  All objects validate their invariants on
// construction and are immutable afterwards.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qensemble/types.hpp"

namespace qensemble {

// Normalized complex amplitude vector.  The norm must be 1 within kStateTol;
// inputs that are only approximately normalized should be cleaned up by the
// caller (the file parser does this explicitly).
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }

  // Rank-one projector |psi><psi|.
  Matrix projector() const;

 private:
  Vector amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite matrix.  The eigenvalues are
// computed once during validation and kept, so entropy of the same operator
// is cheap to evaluate repeatedly.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix matrix);

  static DensityOperator from_pure(const PureState& psi);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  // Spectrum in ascending order, clamped into [0, 1].
  const RealVector& eigenvalues() const { return eigenvalues_; }

 private:
  Matrix matrix_;
  RealVector eigenvalues_;
};

// Ordered list of local dimensions; the ambient space is their tensor
// product.  Index convention: the first factor varies slowest, i.e. a basis
// label of the composite space reads as a mixed-radix number whose most
// significant digit belongs to subsystem 0.
struct SubsystemPartition {
  std::vector<int> local_dims;

  explicit SubsystemPartition(std::vector<int> dims);

  int parts() const { return static_cast<int>(local_dims.size()); }
  int total_dim() const;

  bool operator==(const SubsystemPartition& other) const {
    return local_dims == other.local_dims;
  }
};

using StateVariant = std::variant<PureState, DensityOperator>;

int state_dim(const StateVariant& state);
bool is_pure(const StateVariant& state);
// Density matrix of the state (projector for pure members).
Matrix state_matrix(const StateVariant& state);

// Finite catalogue of signal states with prior probabilities.  Members with
// probability below 1e-15 are dropped; the remaining priors must sum to one
// within kStateTol.  An optional partition marks the space as multipartite.
class Ensemble {
 public:
  struct Member {
    double probability;
    StateVariant state;
  };

  Ensemble(int dim, std::vector<Member> members,
           std::optional<SubsystemPartition> partition = std::nullopt);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Member>& members() const { return members_; }
  const Member& member(int x) const { return members_.at(x); }
  const std::optional<SubsystemPartition>& partition() const { return partition_; }

  bool all_pure() const;

  // Average signal state sum_x p_x rho_x.
  Matrix average_state() const;

  // Projector onto the union of the member supports (eigenvectors of the
  // average state with eigenvalue above eig_tol).
  Matrix support_projector(double eig_tol = kSupportEigTol) const;
  int support_rank(double eig_tol = kSupportEigTol) const;
  bool spans_ambient(double eig_tol = kFullSpanEigTol) const;

 private:
  int dim_;
  std::vector<Member> members_;
  std::optional<SubsystemPartition> partition_;
};

// Kronecker product, first factor slow index.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Trace out every subsystem not listed in `keep`.  `keep` must be a strictly
// increasing, non-empty list of valid subsystem indices; the result lives on
// the tensor product of the kept factors, in their original order.
DensityOperator partial_trace(const DensityOperator& rho,
                              const SubsystemPartition& partition,
                              const std::vector<int>& keep);

// Squared Schmidt coefficients of a pure state across a bipartition,
// in nonincreasing order.  They sum to one.
std::vector<double> schmidt_coefficients(const PureState& psi,
                                         const SubsystemPartition& partition);

// --- ensemble surgery used by invariance checks and the sweep command ---

// Tensor a fixed |0> ancilla of the given dimension onto every member.
// An existing partition gains the ancilla as one more factor; an
// unpartitioned ensemble stays unpartitioned.
Ensemble extend_with_pure_ancilla(const Ensemble& ensemble, int ancilla_dim);

// Conjugate every member by the same unitary.
Ensemble apply_unitary(const Ensemble& ensemble, const Matrix& unitary);

// Dephase one subsystem in the basis given by the columns of local_unitary,
// i.e. apply rho -> sum_j P_j rho P_j with P_j = I (x) |u_j><u_j| (x) I.
Ensemble dephase_subsystem(const Ensemble& ensemble, int subsystem,
                           const Matrix& local_unitary);

}  // namespace qensemble
