#include "qensemble/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qensemble {

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw DomainError("probability vector must be non-empty");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double& w = weights_[i];
    if (!(w >= -kEntropyClamp) || w > 1.0 + kEntropyClamp) {
      std::ostringstream os;
      os << "weight " << i << " is " << w << ", outside [0, 1]";
      throw DomainError(os.str());
    }
    w = std::clamp(w, 0.0, 1.0);
    total += w;
  }
  if (std::abs(total - 1.0) > kProbTol) {
    std::ostringstream os;
    os << "weights sum to " << total << ", expected 1 within " << kProbTol;
    throw DomainError(os.str());
  }
}

double shannon_entropy(const ProbabilityVector& p) {
  return shannon_entropy(std::span<const double>(p.weights()));
}

double shannon_entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w > kEntropyClamp) {
      h -= w * std::log2(w);
    }
  }
  return h;
}

double binary_entropy(double p) {
  if (!(p >= -kEntropyClamp) || p > 1.0 + kEntropyClamp) {
    std::ostringstream os;
    os << "binary entropy argument " << p << " is outside [0, 1]";
    throw DomainError(os.str());
  }
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > kEntropyClamp) h -= p * std::log2(p);
  if (1.0 - p > kEntropyClamp) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const RealVector& eig = rho.eigenvalues();
  return shannon_entropy(std::span<const double>(eig.data(), eig.size()));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("relative entropy needs equal dimensions, got " +
                            std::to_string(rho.dim()) + " vs " + std::to_string(sigma.dim()));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma.matrix());
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigendecomposition of second argument failed");
  }

  // Support check: project rho onto the orthocomplement of sigma's support.
  Matrix kernel = Matrix::Identity(rho.dim(), rho.dim());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()[k] > kSupportEigTol) {
      const Vector v = solver.eigenvectors().col(k);
      kernel -= v * v.adjoint();
    }
  }
  const Matrix leakage = kernel * rho.matrix() * kernel;
  if (leakage.cwiseAbs().maxCoeff() > 1e-9) {
    return std::numeric_limits<double>::infinity();
  }

  // S(rho||sigma) = -S(rho) - sum_k log2(s_k) <v_k|rho|v_k> over sigma's support.
  double cross = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double s = solver.eigenvalues()[k];
    if (s > kSupportEigTol) {
      const Vector v = solver.eigenvectors().col(k);
      const double overlap = std::real(v.dot(rho.matrix() * v));
      cross += std::log2(s) * overlap;
    }
  }
  const double value = -von_neumann_entropy(rho) - cross;
  // Klein's inequality guarantees nonnegativity; anything slightly below zero
  // is roundoff.
  return value < 0.0 ? 0.0 : value;
}

}  // namespace qensemble
