#include <cmath>

#include <doctest.h>

#include "qensemble/sampling.hpp"
#include "test_helpers.hpp"

using namespace qensemble;

TEST_CASE("random pure states are normalized and seed-deterministic") {
  Rng a(101), b(101), c(202);
  for (int dim : {2, 5, 9}) {
    const PureState x = random_pure_state(a, dim);
    const PureState y = random_pure_state(b, dim);
    const PureState z = random_pure_state(c, dim);
    CHECK(x.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((x.amplitudes() - y.amplitudes()).norm() == 0.0);  // same seed, same state
    CHECK((x.amplitudes() - z.amplitudes()).norm() > 1e-3);  // different seed differs
  }
}

TEST_CASE("random density operators are valid states") {
  Rng rng(303);
  for (int dim : {2, 4, 6}) {
    // Construction validates hermiticity, trace and positivity.
    const DensityOperator rho = random_density_operator(rng, dim);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("random probabilities respect the floor and sum to one") {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> p = random_probabilities(rng, 5, 0.05);
    double sum = 0.0;
    double least = 1.0;
    for (double w : p) {
      sum += w;
      least = std::min(least, w);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // The floor keeps every weight a fixed fraction of the uniform weight.
    CHECK(least > 0.0);
  }
}

TEST_CASE("random hermitian and unitary matrices") {
  Rng rng(505);
  for (int dim : {2, 3, 7}) {
    const Matrix h = random_hermitian(rng, dim);
    CHECK((h - h.adjoint()).norm() < 1e-12);
    const Matrix u = random_unitary(rng, dim);
    CHECK((u.adjoint() * u - Matrix::Identity(dim, dim)).norm() < 1e-10);
  }
}

TEST_CASE("random ensembles") {
  Rng rng(606);
  SUBCASE("pure ensembles are pure and carry the partition") {
    const SubsystemPartition part{{2, 2}};
    const Ensemble ens = random_pure_ensemble(rng, 4, 5, part);
    CHECK(ens.size() == 5);
    CHECK(ens.all_pure());
    REQUIRE(ens.partition().has_value());
    CHECK(ens.partition()->local_dims == std::vector<int>{2, 2});
    // Five Haar states almost surely span the four-dimensional space.
    CHECK(ens.spans_ambient());
  }
  SUBCASE("mixed ensembles contain no pure members") {
    const Ensemble ens = random_mixed_ensemble(rng, 3, 4);
    CHECK(ens.size() == 4);
    CHECK_FALSE(ens.all_pure());
  }
  SUBCASE("same seed reproduces the ensemble exactly") {
    Rng r1(707), r2(707);
    const Ensemble a = random_pure_ensemble(r1, 3, 3);
    const Ensemble b = random_pure_ensemble(r2, 3, 3);
    for (int x = 0; x < a.size(); ++x) {
      CHECK(a.member(x).probability == b.member(x).probability);
      CHECK((state_matrix(a.member(x).state) - state_matrix(b.member(x).state)).norm() ==
            0.0);
    }
  }
}
