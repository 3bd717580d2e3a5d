// Orthonormal measurement bases, click statistics, and the taxonomy of
// basis families the optimizer searches over.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qensemble/qstate.hpp"

namespace qensemble {

// Complete orthonormal basis of the ambient space.  The public constructor
// checks the Gram matrix against the identity within kGramTol;
// from_unitary_columns skips that check and is reserved for callers that
// already hold a unitary (the optimizer's exponential map).
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<PureState> vectors);

  static MeasurementBasis computational(int dim);
  static MeasurementBasis from_unitary_columns(const Matrix& unitary);

  int dim() const { return static_cast<int>(vectors_.size()); }
  int size() const { return dim(); }
  const PureState& vector(int i) const { return vectors_.at(i); }
  const std::vector<PureState>& vectors() const { return vectors_; }

  // Unitary whose i-th column is the i-th basis vector.
  Matrix as_matrix() const;

 private:
  struct unchecked_tag {};
  MeasurementBasis(unchecked_tag, std::vector<PureState> vectors);

  std::vector<PureState> vectors_;
};

// A user-supplied basis together with the caller's claim about how it can be
// measured (see Distinguishability below).
struct ExplicitBasisSpec {
  MeasurementBasis basis;
  bool certified = false;       // caller asserts local distinguishability
  std::string certificate_note; // free-text justification for the assertion
};

enum class FamilyKind { FullUnitary, LocalProduct, Explicit };

const char* to_string(FamilyKind kind);

// Search domain for the optimizer: every global orthonormal basis, every
// tensor product of local bases over a fixed partition, or a single fixed
// basis.
class BasisFamily {
 public:
  static BasisFamily full_unitary();
  static BasisFamily local_product(SubsystemPartition partition);
  static BasisFamily explicit_basis(MeasurementBasis basis, bool certified,
                                    std::string certificate_note = "");

  FamilyKind kind() const { return kind_; }

  // LocalProduct only.
  const SubsystemPartition& partition() const;
  // Explicit only.
  const ExplicitBasisSpec& explicit_spec() const;

 private:
  BasisFamily(FamilyKind kind, std::optional<SubsystemPartition> partition,
              std::shared_ptr<const ExplicitBasisSpec> spec);

  FamilyKind kind_;
  std::optional<SubsystemPartition> partition_;
  std::shared_ptr<const ExplicitBasisSpec> explicit_spec_;
};

// Column-stochastic table p(outcome i | signal x); every column is validated
// to sum to one within kProbTol.
class ClickDistribution {
 public:
  ClickDistribution(int n_outcomes, int n_signals, RealMatrix probs);

  int n_outcomes() const { return static_cast<int>(probs_.rows()); }
  int n_signals() const { return static_cast<int>(probs_.cols()); }
  double prob(int outcome, int signal) const { return probs_(outcome, signal); }
  const RealMatrix& probs() const { return probs_; }

 private:
  RealMatrix probs_;
};

// Click column of a single state, written into `out` (resized to basis
// size).  Entries are clamped into [0, 1].
void click_probabilities(const StateVariant& state, const MeasurementBasis& basis,
                         std::vector<double>& out);

ClickDistribution click_distribution(const Ensemble& ensemble,
                                     const MeasurementBasis& basis);

// Indices of basis vectors with weight above tol inside the union of the
// ensemble's supports.  Signals never click outside this set.
std::vector<int> support_overlap_filter(const MeasurementBasis& basis,
                                        const Ensemble& ensemble,
                                        double tol = kOverlapTolDefault);

// True when every basis vector is a product state across the bipartition.
bool is_product_basis(const MeasurementBasis& basis,
                      const SubsystemPartition& partition);

// True when the basis is (up to per-vector phases and ordering) the tensor
// product of one fixed local basis per subsystem.
bool is_local_tensor_basis(const MeasurementBasis& basis,
                           const SubsystemPartition& partition);

// How confident we are that the basis can be told apart by the measurement
// class the family represents:
//  - CertifiedDistinguishable: structurally guaranteed (global measurement,
//    or a tensor product of local bases measured subsystem by subsystem).
//  - AssertedByUser: an explicit basis whose caller vouches for it.
//  - ProductNecessaryOnly: all vectors are product states (a necessary
//    condition for local distinguishability) but no certificate is known.
//  - Unknown: none of the above.
enum class Distinguishability {
  CertifiedDistinguishable,
  AssertedByUser,
  ProductNecessaryOnly,
  Unknown,
};

const char* to_string(Distinguishability status);

Distinguishability distinguishability_status(const MeasurementBasis& basis,
                                             const BasisFamily& family,
                                             const Ensemble& ensemble);

}  // namespace qensemble
