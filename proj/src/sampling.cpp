#include "qensemble/sampling.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qensemble/optimizer.hpp"

namespace qensemble {

PureState random_pure_state(Rng& rng, int dim) {
  if (dim < 1) {
    throw DomainError("dimension must be positive");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = Complex(gauss(rng), gauss(rng));
  }
  v /= v.norm();
  return PureState(std::move(v));
}

DensityOperator random_density_operator(Rng& rng, int dim) {
  if (dim < 1) {
    throw DomainError("dimension must be positive");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityOperator(std::move(rho));
}

std::vector<double> random_probabilities(Rng& rng, int n, double floor) {
  if (n < 1) {
    throw DomainError("need at least one weight");
  }
  if (!(floor >= 0.0)) {
    throw DomainError("floor must be nonnegative");
  }
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& w : p) {
    w = expo(rng) + floor;
    total += w;
  }
  for (double& w : p) {
    w /= total;
  }
  return p;
}

Matrix random_hermitian(Rng& rng, int dim) {
  if (dim < 1) {
    throw DomainError("dimension must be positive");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = Complex(gauss(rng), 0.0);
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(gauss(rng), gauss(rng)) / std::numbers::sqrt2;
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

Matrix random_unitary(Rng& rng, int dim) {
  return unitary_from_generator(UnitaryPoint(dim, random_hermitian(rng, dim)));
}

Ensemble random_pure_ensemble(Rng& rng, int dim, int n_members,
                              std::optional<SubsystemPartition> partition) {
  const std::vector<double> p = random_probabilities(rng, n_members);
  std::vector<Ensemble::Member> members;
  members.reserve(n_members);
  for (int x = 0; x < n_members; ++x) {
    members.push_back({p[x], random_pure_state(rng, dim)});
  }
  return Ensemble(dim, std::move(members), std::move(partition));
}

Ensemble random_mixed_ensemble(Rng& rng, int dim, int n_members,
                               std::optional<SubsystemPartition> partition) {
  const std::vector<double> p = random_probabilities(rng, n_members);
  std::vector<Ensemble::Member> members;
  members.reserve(n_members);
  for (int x = 0; x < n_members; ++x) {
    members.push_back({p[x], random_density_operator(rng, dim)});
  }
  return Ensemble(dim, std::move(members), std::move(partition));
}

}  // namespace qensemble
