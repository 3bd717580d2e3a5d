// Reference ensembles with independently known quantumness and accessible
// information, used as regression anchors by the tests and the CLI.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qensemble/basis.hpp"

namespace qensemble {

// A known value together with which side of the truth it sits on.
struct ExpectedValue {
  enum class Direction { Exact, UpperBound, LowerBound };

  double value;
  Direction direction;
};

const char* to_string(ExpectedValue::Direction direction);

struct CatalogEntry {
  std::string name;
  Ensemble ensemble;
  BasisFamily family;        // search domain the expectations refer to
  std::optional<ExpectedValue> expected_q;
  std::optional<ExpectedValue> expected_iacc;
  std::string provenance;    // where the expectation comes from
};

// Four maximally entangled two-qubit states with equal priors.
CatalogEntry bell_four();

// Two-qubit ensemble { a|00>+b|11>, a|00>-b|11>, c|01>+d|10>, c|01>-d|10> }
// with equal priors; |a|^2+|b|^2 and |c|^2+|d|^2 must both be 1.
CatalogEntry b_prime(Complex a, Complex b, Complex c, Complex d);
// Convenience overload taking |a|^2 and |c|^2 with real positive amplitudes.
CatalogEntry b_prime_real(double a_sq, double c_sq);

// The d^2 canonical maximally entangled states of a d x d system
// (phase-shifted, index-shifted generalizations of the Bell set).
CatalogEntry canonical_maxent(int d);

// Three Bell states with equal priors; quantumness expectation refers to a
// fixed four-element basis that distinguishes the overlap of the supports
// sequentially with local means.
CatalogEntry three_bell();

// Two pure qubit states at the given angle (0 < angle <= pi/2, overlap
// cos(angle)) with equal priors, searched over all global bases.  The
// quantumness expectation comes from an exhaustive one-parameter scan (see
// two_state_scan_minimum).
CatalogEntry two_state_qubit(double angle);

// Exhaustive scan behind two_state_qubit's expectation: production of the
// pair { |0>, cos(angle)|0> + sin(angle)|1> } minimized over real rotations
// of the measurement basis.  Because every member is real and the click
// probabilities are affine in cos of the relative phase while entropy is
// concave, complex phases cannot beat the best real basis, so the scan is
// exhaustive for this ensemble.
double two_state_scan_minimum(double angle, double resolution = 1e-5);

// The entries above with default parameters, in a stable order.
std::vector<CatalogEntry> default_catalog();

}  // namespace qensemble
