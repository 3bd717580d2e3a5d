// Entropy functionals, all in bits (log base 2).  Weights below
// kEntropyClamp are treated as exact zeros so 0*log 0 never produces a NaN.
#pragma once

#include <span>
#include <vector>

#include "qensemble/qstate.hpp"

namespace qensemble {

// Validated probability vector: entries in [0, 1] (with kEntropyClamp slack)
// summing to one within kProbTol.  Entries are clamped into [0, 1] once
// validated.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> weights);

  int size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Shannon entropy of a validated distribution.
double shannon_entropy(const ProbabilityVector& p);

// Same sum over raw weights; the caller guarantees they form a distribution.
// This is the hot-loop variant used on click columns.
double shannon_entropy(std::span<const double> weights);

// H(p) = -p log2 p - (1-p) log2(1-p); p may stray outside [0,1] by at most
// kEntropyClamp.
double binary_entropy(double p);

// Von Neumann entropy from the cached spectrum of the operator.
double von_neumann_entropy(const DensityOperator& rho);

// Quantum relative entropy S(rho||sigma) in bits.  Returns +infinity when
// the support of rho is not contained in the support of sigma (probed by
// projecting rho onto the orthocomplement of sigma's support; mass above
// 1e-9 counts as leakage).
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qensemble
