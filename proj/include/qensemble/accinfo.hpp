// Accessible information: mutual information of measurement outcomes,
// projective maximization, the Holevo and entanglement upper bounds, and
// the complementarity check combining them with the quantumness measure.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qensemble/qmeasure.hpp"

namespace qensemble {

// A quantum measurement: a global rank-one projective basis, a tensor
// product of local projective bases, or a general POVM given by its effect
// operators.
class Measurement {
 public:
  enum class Kind { ProjectiveGlobal, ProjectiveLocalProduct, GeneralPovm };

  static Measurement projective_global(MeasurementBasis basis);
  static Measurement projective_local_product(std::vector<MeasurementBasis> locals);
  // Validates hermiticity, positive semidefiniteness and completeness.
  static Measurement general_povm(std::vector<Matrix> effects);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int n_outcomes() const;

  // Outcome distribution of a single state, written into `out`.
  void outcome_probabilities(const StateVariant& state, std::vector<double>& out) const;

 private:
  Measurement(Kind kind, int dim, std::optional<MeasurementBasis> basis,
              std::vector<Matrix> effects);

  Kind kind_;
  int dim_;
  std::optional<MeasurementBasis> basis_;  // projective kinds (local products flattened)
  std::vector<Matrix> effects_;            // GeneralPovm only
};

// Shannon mutual information (bits) between the signal label and the
// measurement outcome.  Computed through both conditioning directions,
// which must agree within 1e-9.
double mutual_information(const Ensemble& ensemble, const Measurement& measurement);

// Best mutual information over rank-one projective measurements, maximized
// with the basis optimizer.  `local` restricts the search to tensor
// products of local bases over the ensemble's partition.  The result is a
// lower bound on the accessible information of the matching measurement
// class.
double accessible_info_projective(const Ensemble& ensemble, const OptimizerConfig& cfg,
                                  bool local);

// S(average state) - sum_x p_x S(rho_x); an upper bound on the accessible
// information for any measurement.
double holevo_bound(const Ensemble& ensemble);

// log2(dim) minus the average entanglement entropy: an upper bound on the
// information extractable with local operations and classical communication
// from a bipartite ensemble of pure states.
double entanglement_complementarity_bound(const Ensemble& ensemble);

enum class Verdict { Confirmed, Consistent, WitnessOfViolation };

const char* to_string(Verdict verdict);

// Evidence gathered when testing  I_acc + Q <= log2(N)  for an N-member
// ensemble.  Lower/upper refer to the true accessible information of the
// measurement class; q_upper is the optimizer's bound on the quantumness,
// q_exact is set when that bound was certified.
struct ComplementarityReport {
  int n_states;
  double log2_n;
  double iacc_lower;
  double iacc_upper;
  double q_upper;
  std::optional<double> q_exact;
  std::optional<double> q_lower;
  Verdict verdict;
  std::string details;
  QReport q_report;
};

ComplementarityReport check_complementarity(const Ensemble& ensemble,
                                            const BasisFamily& family,
                                            const OptimizerConfig& cfg,
                                            double tol = kCertifyTolDefault);

// Samples random global bases B and verifies the pointwise inequality
// I(B) + production(B) <= log2(N) + 1e-6, which holds whenever N >= dim.
// Returns true when no sampled basis violates it.
bool heisenberg_restricted_check(const Ensemble& ensemble, int samples,
                                 std::uint64_t seed = 12345);

// Mutual information as a lean objective on 2x2 basis columns, for the grid
// oracle.
QubitColumnsObjective mutual_information_columns_objective(const Ensemble& ensemble);

}  // namespace qensemble
