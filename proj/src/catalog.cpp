#include "qensemble/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "qensemble/entropy.hpp"

namespace qensemble {

const char* to_string(ExpectedValue::Direction direction) {
  switch (direction) {
    case ExpectedValue::Direction::Exact: return "exact";
    case ExpectedValue::Direction::UpperBound: return "upper-bound";
    case ExpectedValue::Direction::LowerBound: return "lower-bound";
  }
  return "?";
}

namespace {

PureState two_qubit_state(Complex c00, Complex c01, Complex c10, Complex c11) {
  Vector v(4);
  v << c00, c01, c10, c11;
  return PureState(std::move(v));
}

const double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

}  // namespace

CatalogEntry bell_four() {
  std::vector<Ensemble::Member> members;
  members.push_back({0.25, two_qubit_state(kInvSqrt2, 0, 0, kInvSqrt2)});
  members.push_back({0.25, two_qubit_state(kInvSqrt2, 0, 0, -kInvSqrt2)});
  members.push_back({0.25, two_qubit_state(0, kInvSqrt2, kInvSqrt2, 0)});
  members.push_back({0.25, two_qubit_state(0, kInvSqrt2, -kInvSqrt2, 0)});
  SubsystemPartition partition({2, 2});
  Ensemble ensemble(4, std::move(members), partition);
  return CatalogEntry{
      "bell-four",
      std::move(ensemble),
      BasisFamily::local_product(partition),
      ExpectedValue{1.0, ExpectedValue::Direction::Exact},
      ExpectedValue{1.0, ExpectedValue::Direction::Exact},
      "each member carries one full bit of entanglement entropy, which both "
      "floors the quantumness and caps the locally accessible information at "
      "log2(4) - 1 = 1; the computational product basis attains both"};
}

CatalogEntry b_prime(Complex a, Complex b, Complex c, Complex d) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kStateTol) {
    throw NormViolation("|a|^2 + |b|^2 must equal 1");
  }
  if (std::abs(std::norm(c) + std::norm(d) - 1.0) > kStateTol) {
    throw NormViolation("|c|^2 + |d|^2 must equal 1");
  }
  // Two orthogonal pairs, one per two-dimensional sector: {a|00>+b|11>,
  // conj(b)|00>-conj(a)|11>} and the same pattern on {|01>,|10>}.
  std::vector<Ensemble::Member> members;
  members.push_back({0.25, two_qubit_state(a, 0, 0, b)});
  members.push_back({0.25, two_qubit_state(std::conj(b), 0, 0, -std::conj(a))});
  members.push_back({0.25, two_qubit_state(0, c, d, 0)});
  members.push_back({0.25, two_qubit_state(0, std::conj(d), -std::conj(c), 0)});
  SubsystemPartition partition({2, 2});
  Ensemble ensemble(4, std::move(members), partition);

  const double q = 0.5 * (binary_entropy(std::norm(a)) + binary_entropy(std::norm(c)));
  std::ostringstream provenance;
  provenance << "pairs share supports {|00>,|11>} and {|01>,|10>}; dephasing in the "
                "computational product basis produces exactly the average entanglement "
                "entropy (|a|^2 = "
             << std::norm(a) << ", |c|^2 = " << std::norm(c)
             << "), and measuring it accesses the remaining 2 - q bits";
  return CatalogEntry{
      "b-prime",
      std::move(ensemble),
      BasisFamily::local_product(partition),
      ExpectedValue{q, ExpectedValue::Direction::Exact},
      ExpectedValue{2.0 - q, ExpectedValue::Direction::Exact},
      provenance.str()};
}

CatalogEntry b_prime_real(double a_sq, double c_sq) {
  if (!(a_sq >= 0.0) || a_sq > 1.0 || !(c_sq >= 0.0) || c_sq > 1.0) {
    throw DomainError("squared amplitudes must lie in [0, 1]");
  }
  return b_prime(std::sqrt(a_sq), std::sqrt(1.0 - a_sq), std::sqrt(c_sq),
                 std::sqrt(1.0 - c_sq));
}

CatalogEntry canonical_maxent(int d) {
  if (d < 2) {
    throw DomainError("canonical maximally entangled set needs local dimension >= 2");
  }
  const int dim = d * d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Ensemble::Member> members;
  members.reserve(dim);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      Vector v = Vector::Zero(dim);
      for (int j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * j * n / d;
        v[j * d + (j + m) % d] = amp * std::exp(Complex(0.0, phase));
      }
      members.push_back({1.0 / dim, PureState(std::move(v))});
    }
  }
  SubsystemPartition partition({d, d});
  Ensemble ensemble(dim, std::move(members), partition);
  const double logd = std::log2(static_cast<double>(d));
  return CatalogEntry{
      "canonical-d" + std::to_string(d),
      std::move(ensemble),
      BasisFamily::local_product(partition),
      ExpectedValue{logd, ExpectedValue::Direction::Exact},
      ExpectedValue{logd, ExpectedValue::Direction::Exact},
      "all d^2 members are maximally entangled, so the quantumness is floored "
      "by log2(d) and the locally accessible information is capped at "
      "log2(d^2) - log2(d); the computational product basis attains both"};
}

CatalogEntry three_bell() {
  std::vector<Ensemble::Member> members;
  const double third = 1.0 / 3.0;
  members.push_back({third, two_qubit_state(kInvSqrt2, 0, 0, kInvSqrt2)});
  members.push_back({third, two_qubit_state(kInvSqrt2, 0, 0, -kInvSqrt2)});
  members.push_back({third, two_qubit_state(0, kInvSqrt2, kInvSqrt2, 0)});
  SubsystemPartition partition({2, 2});
  Ensemble ensemble(4, std::move(members), partition);

  std::vector<PureState> vectors;
  vectors.push_back(two_qubit_state(1, 0, 0, 0));
  vectors.push_back(two_qubit_state(0, 0, 0, 1));
  vectors.push_back(two_qubit_state(0, kInvSqrt2, kInvSqrt2, 0));
  vectors.push_back(two_qubit_state(0, kInvSqrt2, -kInvSqrt2, 0));
  MeasurementBasis basis(std::move(vectors));

  return CatalogEntry{
      "three-bell",
      std::move(ensemble),
      BasisFamily::explicit_basis(
          std::move(basis), true,
          "both parties measure computationally; outcomes 00 and 11 pin down the "
          "first two members, outcomes 01/10 only ever come from the third within "
          "the ensemble support, so the basis is locally distinguishable there"),
      ExpectedValue{2.0 / 3.0, ExpectedValue::Direction::UpperBound},
      ExpectedValue{std::log2(3.0) - 2.0 / 3.0, ExpectedValue::Direction::LowerBound},
      "production at the listed basis is exactly 2/3 (the two phase-paired "
      "members each lose one bit, the third loses none); the computational "
      "product measurement already extracts log2(3) - 2/3 bits"};
}

double two_state_scan_minimum(double angle, double resolution) {
  if (!(angle > 0.0) || angle > std::numbers::pi / 2.0 + kStateTol) {
    throw DomainError("angle must lie in (0, pi/2]");
  }
  if (!(resolution > 0.0) || resolution > 0.1) {
    throw DomainError("scan resolution must lie in (0, 0.1]");
  }
  // Real rotations t |-> {cos t |0> + sin t |1>, ...} give production
  // (H(cos^2 t) + H(cos^2(t - angle))) / 2, periodic in pi.
  double best = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::ceil(std::numbers::pi / resolution));
  for (long i = 0; i < steps; ++i) {
    const double t = i * resolution;
    const double c0 = std::cos(t);
    const double c1 = std::cos(t - angle);
    const double value = 0.5 * (binary_entropy(c0 * c0) + binary_entropy(c1 * c1));
    best = std::min(best, value);
  }
  return best;
}

CatalogEntry two_state_qubit(double angle) {
  if (!(angle > 0.0) || angle > std::numbers::pi / 2.0 + kStateTol) {
    throw DomainError("angle must lie in (0, pi/2]");
  }
  std::vector<Ensemble::Member> members;
  Vector zero(2);
  zero << Complex(1.0, 0.0), Complex(0.0, 0.0);
  Vector tilted(2);
  tilted << Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0);
  members.push_back({0.5, PureState(std::move(zero))});
  members.push_back({0.5, PureState(std::move(tilted))});
  Ensemble ensemble(2, std::move(members), std::nullopt);

  const double q = two_state_scan_minimum(angle);
  const double iacc = 1.0 - binary_entropy(0.5 * (1.0 + std::sin(angle)));
  std::ostringstream provenance;
  provenance << "pair of real pure states at angle " << angle
             << "; quantumness from the exhaustive real-rotation scan (complex "
                "phases cannot help: clicks are affine in the relative phase and "
                "entropy is concave), information from the known two-state "
                "discrimination optimum 1 - H((1 + sin(angle))/2)";
  return CatalogEntry{
      "two-state",
      std::move(ensemble),
      BasisFamily::full_unitary(),
      ExpectedValue{q, ExpectedValue::Direction::Exact},
      ExpectedValue{iacc, ExpectedValue::Direction::Exact},
      provenance.str()};
}

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> entries;
  entries.push_back(bell_four());
  entries.push_back(b_prime_real(0.3, 0.5));
  entries.push_back(canonical_maxent(2));
  entries.push_back(canonical_maxent(3));
  entries.push_back(three_bell());
  entries.push_back(two_state_qubit(std::numbers::pi / 4.0));
  return entries;
}

}  // namespace qensemble
