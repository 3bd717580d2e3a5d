// The quantumness measure: dephasing entropy production, its minimization
// over basis families, the relative-entropy cross-check route, and the
// entanglement-based certification lower bound.
#pragma once

#include <optional>
#include <string>

#include "qensemble/entropy.hpp"
#include "qensemble/optimizer.hpp"

namespace qensemble {

enum class BoundDirection { UpperBound, Exact };

const char* to_string(BoundDirection direction);

// Result of a quantumness computation.  `value` is always a valid upper
// bound on the minimum over the searched family; `direction` is upgraded to
// Exact only when an independent lower bound comes within the certification
// tolerance.
struct QReport {
  double value;
  BoundDirection direction;
  MeasurementBasis achieving_basis;
  std::optional<double> lower_bound;
  std::string lower_bound_source;
  Distinguishability basis_status;
  OptimizeTrace trace;
  bool negative_noise_flagged;  // raw optimum fell below -1e-6 before clamping
};

struct CertifyOptions {
  bool attempt = true;               // try to upgrade UpperBound to Exact
  double tol = kCertifyTolDefault;   // certification gap
  double grid_resolution = 1e-3;     // qubit grid used for dim-2 full-unitary runs
};

// Average entropy gained by dephasing each signal in the given basis:
//   sum_x p_x [ H(clicks of rho_x) - S(rho_x) ].
// Nonnegative for every orthonormal basis.
double entropy_production(const Ensemble& ensemble, const MeasurementBasis& basis);

// Same quantity computed through relative entropy: sum_x p_x S(rho_x || s_x)
// where s_x is rho_x dephased in the basis.  Slower but independent of the
// entropy-difference route; used to cross-check it.
double classical_distance(const Ensemble& ensemble, const MeasurementBasis& basis);

// Average entanglement entropy of a bipartite ensemble of pure states whose
// members span the ambient space; a lower bound on the quantumness over any
// locally measurable family.  Throws MissingPartition / NotPure /
// NotFullSpan when the preconditions fail.
double avg_entanglement_lower_bound(const Ensemble& ensemble);

// Attach an externally obtained lower bound to a report; upgrades the
// direction to Exact when the gap closes within tol.
QReport certify(QReport upper, double lower, double tol,
                const std::string& source = "supplied");

// Minimize entropy production over the family.  Negative optima beyond
// -1e-6 are flagged (they indicate a broken objective); smaller negatives
// are clamped to zero.  When certification is enabled the report is
// upgraded via the entanglement bound (locally measurable families over
// full-span pure bipartite ensembles) or the qubit grid oracle (dim-2
// full-unitary searches).
QReport quantum_correlation(const Ensemble& ensemble, const BasisFamily& family,
                            const OptimizerConfig& cfg,
                            const CertifyOptions& certify_opts = {});

// Entropy production as a lean objective on 2x2 basis columns, for the grid
// oracle.
QubitColumnsObjective production_columns_objective(const Ensemble& ensemble);

}  // namespace qensemble
