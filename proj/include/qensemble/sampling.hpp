// Seeded random generators for states, operators and ensembles; every draw
// is reproducible from the engine's seed.
#pragma once

#include <optional>
#include <random>

#include "qensemble/qstate.hpp"

namespace qensemble {

using Rng = std::mt19937_64;

// Haar-distributed pure state (normalized complex Gaussian vector).
PureState random_pure_state(Rng& rng, int dim);

// Full-rank density operator from a complex Ginibre matrix G: G G^dag / tr.
DensityOperator random_density_operator(Rng& rng, int dim);

// Distribution with every weight at least floor/(n*(1+floor)) so no member
// gets dropped as zero-probability.
std::vector<double> random_probabilities(Rng& rng, int n, double floor = 0.05);

// Gaussian hermitian matrix (GUE-style scaling).
Matrix random_hermitian(Rng& rng, int dim);

// exp(i H) of a Gaussian hermitian generator.
Matrix random_unitary(Rng& rng, int dim);

Ensemble random_pure_ensemble(Rng& rng, int dim, int n_members,
                              std::optional<SubsystemPartition> partition = std::nullopt);

Ensemble random_mixed_ensemble(Rng& rng, int dim, int n_members,
                               std::optional<SubsystemPartition> partition = std::nullopt);

}  // namespace qensemble
