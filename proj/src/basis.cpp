#include "qensemble/basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace qensemble {

MeasurementBasis::MeasurementBasis(std::vector<PureState> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) {
    throw DomainError("measurement basis must contain at least one vector");
  }
  const int d = vectors_[0].dim();
  if (static_cast<int>(vectors_.size()) != d) {
    throw DimensionMismatch("basis has " + std::to_string(vectors_.size()) +
                            " vectors but the space has dimension " + std::to_string(d));
  }
  for (const PureState& v : vectors_) {
    if (v.dim() != d) {
      throw DimensionMismatch("basis vectors have inconsistent dimensions");
    }
  }
  // Gram matrix against the identity; PureState already guarantees unit
  // norms, so only the off-diagonal overlaps can fail.
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double overlap = std::abs(vectors_[i].amplitudes().dot(vectors_[j].amplitudes()));
      if (overlap > kGramTol) {
        std::ostringstream os;
        os << "basis vectors " << i << " and " << j << " overlap by " << overlap
           << " (tolerance " << kGramTol << ")";
        throw NormViolation(os.str());
      }
    }
  }
}

MeasurementBasis::MeasurementBasis(unchecked_tag, std::vector<PureState> vectors)
    : vectors_(std::move(vectors)) {}

MeasurementBasis MeasurementBasis::computational(int dim) {
  if (dim < 1) {
    throw DomainError("basis dimension must be positive");
  }
  std::vector<PureState> vectors;
  vectors.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = Complex(1.0, 0.0);
    vectors.emplace_back(std::move(e));
  }
  return MeasurementBasis(unchecked_tag{}, std::move(vectors));
}

MeasurementBasis MeasurementBasis::from_unitary_columns(const Matrix& unitary) {
  if (unitary.rows() != unitary.cols() || unitary.rows() == 0) {
    throw DimensionMismatch("basis matrix must be square and non-empty");
  }
  std::vector<PureState> vectors;
  vectors.reserve(unitary.cols());
  for (Eigen::Index j = 0; j < unitary.cols(); ++j) {
    vectors.emplace_back(Vector(unitary.col(j)));
  }
  return MeasurementBasis(unchecked_tag{}, std::move(vectors));
}

Matrix MeasurementBasis::as_matrix() const {
  Matrix u(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    u.col(j) = vectors_[j].amplitudes();
  }
  return u;
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::FullUnitary: return "full-unitary";
    case FamilyKind::LocalProduct: return "local-product";
    case FamilyKind::Explicit: return "explicit";
  }
  return "?";
}

BasisFamily::BasisFamily(FamilyKind kind, std::optional<SubsystemPartition> partition,
                         std::shared_ptr<const ExplicitBasisSpec> spec)
    : kind_(kind), partition_(std::move(partition)), explicit_spec_(std::move(spec)) {}

BasisFamily BasisFamily::full_unitary() {
  return BasisFamily(FamilyKind::FullUnitary, std::nullopt, nullptr);
}

BasisFamily BasisFamily::local_product(SubsystemPartition partition) {
  return BasisFamily(FamilyKind::LocalProduct, std::move(partition), nullptr);
}

BasisFamily BasisFamily::explicit_basis(MeasurementBasis basis, bool certified,
                                        std::string certificate_note) {
  auto spec = std::make_shared<const ExplicitBasisSpec>(
      ExplicitBasisSpec{std::move(basis), certified, std::move(certificate_note)});
  return BasisFamily(FamilyKind::Explicit, std::nullopt, std::move(spec));
}

const SubsystemPartition& BasisFamily::partition() const {
  if (!partition_) {
    throw PreconditionViolation("family has no partition (not a local-product family)");
  }
  return *partition_;
}

const ExplicitBasisSpec& BasisFamily::explicit_spec() const {
  if (!explicit_spec_) {
    throw PreconditionViolation("family has no explicit basis");
  }
  return *explicit_spec_;
}

ClickDistribution::ClickDistribution(int n_outcomes, int n_signals, RealMatrix probs)
    : probs_(std::move(probs)) {
  if (probs_.rows() != n_outcomes || probs_.cols() != n_signals) {
    throw DimensionMismatch("click table shape does not match the declared counts");
  }
  for (int x = 0; x < n_signals; ++x) {
    double total = 0.0;
    for (int i = 0; i < n_outcomes; ++i) {
      double& p = probs_(i, x);
      if (!(p >= -kEntropyClamp) || p > 1.0 + kEntropyClamp) {
        std::ostringstream os;
        os << "click probability (" << i << ", " << x << ") is " << p;
        throw DomainError(os.str());
      }
      p = std::clamp(p, 0.0, 1.0);
      total += p;
    }
    if (std::abs(total - 1.0) > kProbTol) {
      std::ostringstream os;
      os << "click column " << x << " sums to " << total << ", expected 1 within "
         << kProbTol;
      throw DomainError(os.str());
    }
  }
}

void click_probabilities(const StateVariant& state, const MeasurementBasis& basis,
                         std::vector<double>& out) {
  const int d = basis.dim();
  if (state_dim(state) != d) {
    throw DimensionMismatch("state dimension " + std::to_string(state_dim(state)) +
                            " does not match basis dimension " + std::to_string(d));
  }
  out.resize(d);
  if (const auto* psi = std::get_if<PureState>(&state)) {
    for (int i = 0; i < d; ++i) {
      const Complex amp = basis.vector(i).amplitudes().dot(psi->amplitudes());
      out[i] = std::clamp(std::norm(amp), 0.0, 1.0);
    }
  } else {
    const Matrix& rho = std::get<DensityOperator>(state).matrix();
    for (int i = 0; i < d; ++i) {
      const Vector& a = basis.vector(i).amplitudes();
      out[i] = std::clamp(std::real(a.dot(rho * a)), 0.0, 1.0);
    }
  }
}

ClickDistribution click_distribution(const Ensemble& ensemble,
                                     const MeasurementBasis& basis) {
  RealMatrix table(basis.dim(), ensemble.size());
  std::vector<double> column;
  for (int x = 0; x < ensemble.size(); ++x) {
    click_probabilities(ensemble.member(x).state, basis, column);
    for (int i = 0; i < basis.dim(); ++i) {
      table(i, x) = column[i];
    }
  }
  return ClickDistribution(basis.dim(), ensemble.size(), std::move(table));
}

std::vector<int> support_overlap_filter(const MeasurementBasis& basis,
                                        const Ensemble& ensemble, double tol) {
  if (basis.dim() != ensemble.dim()) {
    throw DimensionMismatch("basis and ensemble dimensions differ");
  }
  const Matrix proj = ensemble.support_projector();
  std::vector<int> kept;
  for (int i = 0; i < basis.dim(); ++i) {
    const Vector& a = basis.vector(i).amplitudes();
    if (std::real(a.dot(proj * a)) > tol) {
      kept.push_back(i);
    }
  }
  return kept;
}

namespace {

// Largest two squared Schmidt coefficients decide purity of the reduction;
// a basis vector is a product state iff the second one vanishes.
bool vector_is_product(const PureState& v, const SubsystemPartition& partition) {
  const std::vector<double> lambdas = schmidt_coefficients(v, partition);
  return lambdas.size() < 2 || lambdas[1] < 1e-9;
}

// Local factor of a product vector on subsystem k: the top eigenvector of
// the reduced density matrix.
Vector local_factor(const PureState& v, const SubsystemPartition& partition, int k) {
  const DensityOperator reduced =
      partial_trace(DensityOperator::from_pure(v), partition, {k});
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced.matrix());
  return solver.eigenvectors().col(reduced.dim() - 1);  // eigenvalues ascend
}

// True when the reduced state of v on subsystem k is pure within tolerance.
bool reduction_is_pure(const PureState& v, const SubsystemPartition& partition, int k) {
  const DensityOperator reduced =
      partial_trace(DensityOperator::from_pure(v), partition, {k});
  return reduced.eigenvalues().maxCoeff() > 1.0 - 1e-9;
}

}  // namespace

bool is_product_basis(const MeasurementBasis& basis,
                      const SubsystemPartition& partition) {
  if (partition.parts() != 2) {
    throw DimensionMismatch("product test needs a bipartition");
  }
  if (partition.total_dim() != basis.dim()) {
    throw DimensionMismatch("partition does not match basis dimension");
  }
  return std::all_of(basis.vectors().begin(), basis.vectors().end(),
                     [&](const PureState& v) { return vector_is_product(v, partition); });
}

bool is_local_tensor_basis(const MeasurementBasis& basis,
                           const SubsystemPartition& partition) {
  if (partition.total_dim() != basis.dim()) {
    throw DimensionMismatch("partition does not match basis dimension");
  }
  if (partition.parts() == 1) {
    return true;  // single factor: any basis is trivially "local"
  }
  // Every vector must factor on every subsystem...
  for (const PureState& v : basis.vectors()) {
    for (int k = 0; k < partition.parts(); ++k) {
      if (!reduction_is_pure(v, partition, k)) {
        return false;
      }
    }
  }
  // ...and per subsystem the local factors must cluster into exactly d_k
  // pairwise-orthogonal rays.  Together with completeness of the global
  // basis this forces the tensor-grid structure.
  for (int k = 0; k < partition.parts(); ++k) {
    std::vector<Vector> rays;
    for (const PureState& v : basis.vectors()) {
      const Vector f = local_factor(v, partition, k);
      bool matched = false;
      for (const Vector& r : rays) {
        const double overlap = std::abs(r.dot(f));
        if (overlap > 1.0 - 1e-7) {
          matched = true;
          break;
        }
        if (overlap > 1e-7) {
          return false;  // neither parallel nor orthogonal to a known ray
        }
      }
      if (!matched) {
        rays.push_back(f);
      }
    }
    if (static_cast<int>(rays.size()) != partition.local_dims[k]) {
      return false;
    }
  }
  return true;
}

const char* to_string(Distinguishability status) {
  switch (status) {
    case Distinguishability::CertifiedDistinguishable: return "certified-distinguishable";
    case Distinguishability::AssertedByUser: return "asserted-by-user";
    case Distinguishability::ProductNecessaryOnly: return "product-necessary-only";
    case Distinguishability::Unknown: return "unknown";
  }
  return "?";
}

Distinguishability distinguishability_status(const MeasurementBasis& basis,
                                             const BasisFamily& family,
                                             const Ensemble& ensemble) {
  if (basis.dim() != ensemble.dim()) {
    throw DimensionMismatch("basis and ensemble dimensions differ");
  }
  // A single global measurement resolves any orthonormal basis.
  if (family.kind() == FamilyKind::FullUnitary) {
    return Distinguishability::CertifiedDistinguishable;
  }
  const std::optional<SubsystemPartition>& partition =
      family.kind() == FamilyKind::LocalProduct
          ? std::optional<SubsystemPartition>(family.partition())
          : ensemble.partition();
  if (partition && is_local_tensor_basis(basis, *partition)) {
    return Distinguishability::CertifiedDistinguishable;
  }
  if (family.kind() == FamilyKind::Explicit && family.explicit_spec().certified) {
    return Distinguishability::AssertedByUser;
  }
  if (partition && partition->parts() == 2 && is_product_basis(basis, *partition)) {
    return Distinguishability::ProductNecessaryOnly;
  }
  return Distinguishability::Unknown;
}

}  // namespace qensemble
