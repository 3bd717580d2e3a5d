#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qensemble/catalog.hpp"
#include "qensemble/qmeasure.hpp"
#include "qensemble/sampling.hpp"
#include "test_helpers.hpp"

using namespace qensemble;
using test_helpers::ket;
using test_helpers::ket01;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Ensemble zero_plus() {
  return Ensemble(2, {{0.5, ket01(1.0, 0.0)}, {0.5, ket01(kInvSqrt2, kInvSqrt2)}});
}
}  // namespace

TEST_CASE("entropy production hand cases") {
  const MeasurementBasis comp = MeasurementBasis::computational(2);
  SUBCASE("{|0>,|+>} in the computational basis loses half a bit") {
    // |0> clicks deterministically (0 bits), |+> clicks uniformly (1 bit).
    CHECK(entropy_production(zero_plus(), comp) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("orthogonal states in their own basis lose nothing") {
    const Ensemble pair(2, {{0.5, ket01(1.0, 0.0)}, {0.5, ket01(0.0, 1.0)}});
    CHECK(entropy_production(pair, comp) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("a mixed state measured in its eigenbasis is already classical") {
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    const Ensemble one(2, {{1.0, DensityOperator(diag)}});
    // Clicks reproduce the spectrum, so H(clicks) = S(rho) exactly.
    CHECK(entropy_production(one, comp) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("production is nonnegative for random bases") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const Ensemble ens = random_mixed_ensemble(rng, 3, 3);
      const MeasurementBasis basis =
          MeasurementBasis::from_unitary_columns(random_unitary(rng, 3));
      CHECK(entropy_production(ens, basis) >= -1e-12);
    }
  }
}

TEST_CASE("the relative-entropy route reproduces entropy production") {
  Rng rng(43);
  for (int dim : {2, 4, 6}) {
    for (int trial = 0; trial < 8; ++trial) {
      const Ensemble ens = (trial % 2 == 0) ? random_pure_ensemble(rng, dim, 3)
                                            : random_mixed_ensemble(rng, dim, 2);
      const MeasurementBasis basis =
          MeasurementBasis::from_unitary_columns(random_unitary(rng, dim));
      CHECK(std::abs(entropy_production(ens, basis) - classical_distance(ens, basis)) <
            1e-9);
    }
  }
}

TEST_CASE("average entanglement lower bound") {
  SUBCASE("Bell ensemble carries one full bit") {
    CHECK(avg_entanglement_lower_bound(bell_four().ensemble) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("two-sector ensemble matches its closed form") {
    CHECK(avg_entanglement_lower_bound(b_prime_real(0.3, 0.5).ensemble) ==
          doctest::Approx(0.9406454496153463).epsilon(1e-12));
  }
  SUBCASE("preconditions are enforced") {
    CHECK_THROWS_AS(avg_entanglement_lower_bound(zero_plus()), MissingPartition);

    const SubsystemPartition part{{2, 2}};
    Rng rng(5);
    const Ensemble with_mixed(
        4, {{0.5, random_pure_state(rng, 4)}, {0.5, random_density_operator(rng, 4)}},
        part);
    CHECK_THROWS_AS(avg_entanglement_lower_bound(with_mixed), NotPure);

    const Ensemble narrow(
        4, {{1.0, ket({Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)})}},
        part);
    CHECK_THROWS_AS(avg_entanglement_lower_bound(narrow), NotFullSpan);
  }
}

TEST_CASE("certify keeps the strongest bound and gates the upgrade") {
  QReport report{0.5,
                 BoundDirection::UpperBound,
                 MeasurementBasis::computational(2),
                 std::nullopt,
                 "",
                 Distinguishability::CertifiedDistinguishable,
                 {},
                 false};
  report = certify(report, 0.2, 1e-4, "weak");
  CHECK(report.direction == BoundDirection::UpperBound);
  CHECK(*report.lower_bound == doctest::Approx(0.2));
  report = certify(report, 0.1, 1e-4, "weaker");  // must not displace 0.2
  CHECK(*report.lower_bound == doctest::Approx(0.2));
  CHECK(report.lower_bound_source == "weak");
  report = certify(report, 0.49995, 1e-4, "tight");
  CHECK(report.direction == BoundDirection::Exact);
  CHECK(report.lower_bound_source == "tight");
  CHECK_THROWS_AS(certify(report, 0.1, -1.0, "bad tol"), DomainError);
}

TEST_CASE("quantum correlation on single-qubit ensembles") {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_evals_per_restart = 4000;
  SUBCASE("{|0>,|+>} has exactly half a bit of quantumness") {
    const QReport r = quantum_correlation(zero_plus(), BasisFamily::full_unitary(), cfg);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.direction == BoundDirection::Exact);  // closed by the grid oracle
    CHECK(r.lower_bound_source == "qubit grid oracle");
    CHECK_FALSE(r.negative_noise_flagged);
    CHECK(r.basis_status == Distinguishability::CertifiedDistinguishable);
  }
  SUBCASE("orthogonal pairs are classical") {
    const Ensemble pair(2, {{0.5, ket01(1.0, 0.0)}, {0.5, ket01(0.0, 1.0)}});
    const QReport r = quantum_correlation(pair, BasisFamily::full_unitary(), cfg);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.value >= 0.0);  // clamped, never negative
  }
  SUBCASE("certification can be disabled") {
    const QReport r = quantum_correlation(zero_plus(), BasisFamily::full_unitary(), cfg,
                                          CertifyOptions{false, 1e-4, 1e-3});
    CHECK_FALSE(r.lower_bound.has_value());
    CHECK(r.direction == BoundDirection::UpperBound);
  }
}

TEST_CASE("quantum correlation over local-product and explicit families") {
  SUBCASE("Bell ensemble is certified exact through the entanglement floor") {
    const CatalogEntry entry = bell_four();
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_evals_per_restart = 4000;
    const QReport r = quantum_correlation(entry.ensemble, entry.family, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.direction == BoundDirection::Exact);
    CHECK(r.lower_bound_source == "average entanglement entropy");
    CHECK(r.basis_status == Distinguishability::CertifiedDistinguishable);
  }
  SUBCASE("an explicit basis is evaluated, not searched") {
    const Ensemble ens = zero_plus();
    const BasisFamily fixed =
        BasisFamily::explicit_basis(MeasurementBasis::computational(2), true);
    const QReport r = quantum_correlation(ens, fixed, OptimizerConfig{});
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.trace.total_evals == 1);
    CHECK(r.basis_status == Distinguishability::AssertedByUser);
  }
}

TEST_CASE("the lean column objective matches the full production path") {
  const Ensemble ens = zero_plus();
  const QubitColumnsObjective lean = production_columns_objective(ens);
  Rng rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix u = random_unitary(rng, 2);
    const double via_columns = lean(Eigen::Matrix2cd(u));
    const double via_basis = entropy_production(ens, MeasurementBasis::from_unitary_columns(u));
    CHECK(via_columns == doctest::Approx(via_basis).epsilon(1e-12));
  }
  CHECK_THROWS_AS(production_columns_objective(random_mixed_ensemble(rng, 3, 2)),
                  DimensionMismatch);
}
