#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qensemble/qstate.hpp"
#include "qensemble/sampling.hpp"
#include "test_helpers.hpp"

using namespace qensemble;
using test_helpers::ket;
using test_helpers::ket01;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

PureState bell_phi_plus() {
  return ket({Complex(kInvSqrt2, 0), Complex(0, 0), Complex(0, 0), Complex(kInvSqrt2, 0)});
}
}  // namespace

TEST_CASE("pure states validate their norm") {
  CHECK_NOTHROW(ket01(1.0, 0.0));
  CHECK_NOTHROW(ket01(kInvSqrt2, kInvSqrt2));
  CHECK_THROWS_AS(ket01(1.0, 0.5), NormViolation);
  CHECK_THROWS_AS(ket01(0.0, 0.0), NormViolation);
  CHECK_THROWS_AS(PureState(Vector(0)), DomainError);
  CHECK(ket01(0.0, 1.0).dim() == 2);
}

TEST_CASE("density operators validate hermiticity, trace and positivity") {
  Matrix good(2, 2);
  good << 0.75, 0.25, 0.25, 0.25;
  CHECK_NOTHROW((DensityOperator(good)));

  Matrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.3, -0.3, 0.5;
  CHECK_THROWS_AS((DensityOperator(not_hermitian)), DomainError);

  Matrix wrong_trace(2, 2);
  wrong_trace << 0.6, 0.0, 0.0, 0.6;
  CHECK_THROWS_AS((DensityOperator(wrong_trace)), NormViolation);

  Matrix negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS((DensityOperator(negative)), DomainError);

  CHECK_THROWS_AS(DensityOperator(Matrix::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("state variant helpers") {
  const StateVariant pure = ket01(1.0, 0.0);
  const StateVariant mixed = DensityOperator(Matrix::Identity(2, 2) / 2.0);
  CHECK(is_pure(pure));
  CHECK_FALSE(is_pure(mixed));
  CHECK(state_dim(pure) == 2);
  CHECK(state_dim(mixed) == 2);
  // Pure members turn into their projectors.
  const Matrix proj = state_matrix(pure);
  CHECK(std::abs(proj(0, 0).real() - 1.0) < 1e-14);
  CHECK(std::abs(proj(1, 1).real()) < 1e-14);
}

TEST_CASE("subsystem partitions") {
  const SubsystemPartition part{{2, 3}};
  CHECK(part.parts() == 2);
  CHECK(part.total_dim() == 6);
  CHECK((part == SubsystemPartition{{2, 3}}));
  CHECK_FALSE((part == SubsystemPartition{{3, 2}}));
  CHECK_THROWS_AS((SubsystemPartition{std::vector<int>{}}.total_dim()), DomainError);
  CHECK_THROWS_AS((SubsystemPartition{{2, 0}}.total_dim()), DomainError);
}

TEST_CASE("tensor product uses the first factor as the slow index") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const Matrix xi = tensor_product(x, Matrix::Identity(2, 2));
  CHECK(xi.rows() == 4);
  // (X (x) I)|00> = |10>, i.e. column 0 has its one at row 2.
  CHECK(std::abs(xi(2, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(xi(0, 0)) < 1e-15);
  CHECK(std::abs(xi(3, 1) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  const DensityOperator rho(state_matrix(bell_phi_plus()));
  const SubsystemPartition part{{2, 2}};
  for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1}}) {
    const DensityOperator reduced = partial_trace(rho, part, keep);
    CHECK((reduced.matrix() - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
  }
}

TEST_CASE("partial trace matches the brute-force index loop") {
  Rng rng(2024);
  SUBCASE("2x3, keep either factor") {
    const DensityOperator rho = random_density_operator(rng, 6);
    const SubsystemPartition part{{2, 3}};
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1}}) {
      const Matrix expected = test_helpers::naive_partial_trace(rho.matrix(), {2, 3}, keep);
      CHECK((partial_trace(rho, part, keep).matrix() - expected).norm() < 1e-12);
    }
  }
  SUBCASE("2x2x2, keep a non-contiguous pair") {
    const DensityOperator rho = random_density_operator(rng, 8);
    const SubsystemPartition part{{2, 2, 2}};
    const std::vector<int> keep{0, 2};
    const Matrix expected = test_helpers::naive_partial_trace(rho.matrix(), {2, 2, 2}, keep);
    CHECK((partial_trace(rho, part, keep).matrix() - expected).norm() < 1e-12);
  }
}

TEST_CASE("partial trace rejects bad keep lists") {
  const DensityOperator rho(Matrix::Identity(4, 4) / 4.0);
  const SubsystemPartition part{{2, 2}};
  CHECK_THROWS_AS(partial_trace(rho, part, {}), PreconditionViolation);
  CHECK_THROWS_AS(partial_trace(rho, part, {2}), PreconditionViolation);
  CHECK_THROWS_AS(partial_trace(rho, part, {1, 0}), PreconditionViolation);
  CHECK_THROWS_AS(partial_trace(rho, SubsystemPartition{{2, 3}}, {0}), DimensionMismatch);
}

TEST_CASE("schmidt coefficients") {
  const SubsystemPartition part{{2, 2}};
  SUBCASE("Bell state is balanced") {
    const std::vector<double> s = schmidt_coefficients(bell_phi_plus(), part);
    REQUIRE(s.size() == 2);
    CHECK(std::abs(s[0] - 0.5) < 1e-12);
    CHECK(std::abs(s[1] - 0.5) < 1e-12);
  }
  SUBCASE("product state is rank one") {
    const PureState psi = ket({Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0)});
    const std::vector<double> s = schmidt_coefficients(psi, part);
    CHECK(std::abs(s[0] - 1.0) < 1e-12);
    CHECK(std::abs(s[1]) < 1e-12);
  }
  SUBCASE("random state matches the closed-form 2x2 singular values") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const PureState psi = random_pure_state(rng, 4);
      const std::vector<double> expected =
          test_helpers::schmidt_2x2_closed_form(psi.amplitudes());
      const std::vector<double> got = schmidt_coefficients(psi, part);
      REQUIRE(got.size() == 2);
      CHECK(std::abs(got[0] - expected[0]) < 1e-10);
      CHECK(std::abs(got[1] - expected[1]) < 1e-10);
      CHECK(std::abs(got[0] + got[1] - 1.0) < 1e-12);
    }
  }
  SUBCASE("rejects non-bipartite partitions") {
    Rng rng(1);
    const PureState psi = random_pure_state(rng, 8);
    CHECK_THROWS_AS(schmidt_coefficients(psi, SubsystemPartition{{2, 2, 2}}),
                    DimensionMismatch);
  }
}

TEST_CASE("ensembles validate and normalize their members") {
  const Ensemble::Member zero{0.5, ket01(1.0, 0.0)};
  const Ensemble::Member plus{0.5, ket01(kInvSqrt2, kInvSqrt2)};

  SUBCASE("accepts a valid ensemble and averages it") {
    const Ensemble ens(2, {zero, plus});
    CHECK(ens.size() == 2);
    CHECK(ens.all_pure());
    Matrix expected(2, 2);
    expected << 0.75, 0.25, 0.25, 0.25;
    CHECK((ens.average_state() - expected).norm() < 1e-12);
  }
  SUBCASE("rejects priors that do not sum to one") {
    CHECK_THROWS_AS(Ensemble(2, {zero, {0.6, ket01(kInvSqrt2, kInvSqrt2)}}), NormViolation);
  }
  SUBCASE("rejects members of the wrong dimension") {
    CHECK_THROWS_AS(Ensemble(2, {{1.0, bell_phi_plus()}}), DimensionMismatch);
  }
  SUBCASE("rejects a partition that does not multiply out") {
    CHECK_THROWS_AS(Ensemble(2, {zero, plus}, SubsystemPartition{{2, 2}}),
                    DimensionMismatch);
  }
  SUBCASE("drops vanishing-probability members") {
    const Ensemble ens(2, {{1.0 - 1e-16, ket01(1.0, 0.0)}, {1e-16, ket01(0.0, 1.0)}});
    CHECK(ens.size() == 1);
  }
  SUBCASE("rejects negative probabilities") {
    CHECK_THROWS_AS(Ensemble(2, {{1.2, ket01(1.0, 0.0)}, {-0.2, ket01(0.0, 1.0)}}),
                    DomainError);
  }
}

TEST_CASE("support projector and span detection") {
  SUBCASE("single state spans a line") {
    const Ensemble ens(2, {{1.0, ket01(1.0, 0.0)}});
    CHECK(ens.support_rank() == 1);
    CHECK_FALSE(ens.spans_ambient());
  }
  SUBCASE("two non-orthogonal states span the qubit") {
    const Ensemble ens(2, {{0.5, ket01(1.0, 0.0)}, {0.5, ket01(kInvSqrt2, kInvSqrt2)}});
    CHECK(ens.support_rank() == 2);
    CHECK(ens.spans_ambient());
  }
  SUBCASE("projector reproduces the support") {
    const Ensemble ens(2, {{1.0, ket01(0.0, 1.0)}});
    const Matrix p = ens.support_projector();
    CHECK(std::abs(p(1, 1).real() - 1.0) < 1e-10);
    CHECK(std::abs(p(0, 0).real()) < 1e-10);
  }
}

TEST_CASE("pure ancilla extension appends a last factor") {
  const Ensemble ens(2, {{0.5, ket01(1.0, 0.0)}, {0.5, ket01(kInvSqrt2, kInvSqrt2)}});
  const Ensemble ext = extend_with_pure_ancilla(ens, 3);
  CHECK(ext.dim() == 6);
  CHECK_FALSE(ext.partition().has_value());  // unpartitioned stays unpartitioned
  // Average state factorizes as (old average) (x) |0><0|.
  Matrix anc = Matrix::Zero(3, 3);
  anc(0, 0) = 1.0;
  CHECK((ext.average_state() - tensor_product(ens.average_state(), anc)).norm() < 1e-12);

  const Ensemble bipartite(4, {{1.0, bell_phi_plus()}}, SubsystemPartition{{2, 2}});
  const Ensemble ext2 = extend_with_pure_ancilla(bipartite, 2);
  REQUIRE(ext2.partition().has_value());
  CHECK(ext2.partition()->local_dims == std::vector<int>{2, 2, 2});
  CHECK_THROWS_AS(extend_with_pure_ancilla(ens, 0), DomainError);
}

TEST_CASE("unitary conjugation preserves spectra") {
  Rng rng(99);
  const Ensemble ens(3, {{0.4, random_pure_state(rng, 3)},
                         {0.6, random_density_operator(rng, 3)}});
  const Matrix u = random_unitary(rng, 3);
  const Ensemble rotated = apply_unitary(ens, u);
  const auto spectrum = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return es.eigenvalues();
  };
  CHECK((spectrum(rotated.average_state()) - spectrum(ens.average_state())).norm() < 1e-10);
  CHECK_THROWS_AS(apply_unitary(ens, Matrix::Identity(2, 2)), DimensionMismatch);
}

TEST_CASE("subsystem dephasing kills local coherence") {
  const Ensemble ens(4, {{1.0, bell_phi_plus()}}, SubsystemPartition{{2, 2}});
  const Ensemble dephased = dephase_subsystem(ens, 0, Matrix::Identity(2, 2));
  REQUIRE(dephased.size() == 1);
  // Dephasing either side of a Bell pair leaves the classically correlated
  // mixture (|00><00| + |11><11|) / 2.
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK((state_matrix(dephased.member(0).state) - expected).norm() < 1e-12);

  const Ensemble bare(2, {{1.0, ket01(1.0, 0.0)}});
  CHECK_THROWS_AS(dephase_subsystem(bare, 0, Matrix::Identity(2, 2)), MissingPartition);
  CHECK_THROWS_AS(dephase_subsystem(ens, 2, Matrix::Identity(2, 2)), PreconditionViolation);
  CHECK_THROWS_AS(dephase_subsystem(ens, 0, Matrix::Identity(4, 4)), DimensionMismatch);
}
