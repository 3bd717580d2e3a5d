#include "qensemble/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace qensemble {

namespace {

std::string dim_text(long a, long b) {
  std::ostringstream os;
  os << a << " vs " << b;
  return os.str();
}

}  // namespace

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw DomainError("pure state needs at least one amplitude");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "pure state norm is " << norm << ", expected 1 within " << kStateTol;
    throw NormViolation(os.str());
  }
}

Matrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

DensityOperator::DensityOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw DimensionMismatch("density operator must be a non-empty square matrix, got " +
                            dim_text(matrix_.rows(), matrix_.cols()));
  }
  const double herm_gap = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_gap > kStateTol) {
    std::ostringstream os;
    os << "density operator is not hermitian (max deviation " << herm_gap << ")";
    throw DomainError(os.str());
  }
  const double trace_gap = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_gap > kStateTol) {
    std::ostringstream os;
    os << "density operator trace deviates from 1 by " << trace_gap;
    throw NormViolation(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigendecomposition of density operator failed");
  }
  eigenvalues_ = solver.eigenvalues();
  if (eigenvalues_.minCoeff() < -kStateTol) {
    std::ostringstream os;
    os << "density operator has negative eigenvalue " << eigenvalues_.minCoeff();
    throw DomainError(os.str());
  }
  // Small negatives are eigensolver noise; clamp them so entropies never see
  // values outside [0, 1].
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    eigenvalues_[i] = std::clamp(eigenvalues_[i], 0.0, 1.0);
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.projector());
}

SubsystemPartition::SubsystemPartition(std::vector<int> dims) : local_dims(std::move(dims)) {
  if (local_dims.empty()) {
    throw DomainError("subsystem partition needs at least one factor");
  }
  for (int d : local_dims) {
    if (d < 1) {
      throw DomainError("subsystem dimensions must be positive");
    }
  }
}

int SubsystemPartition::total_dim() const {
  long long prod = 1;
  for (int d : local_dims) {
    prod *= d;
    if (prod > (1 << 24)) {
      throw DomainError("partition dimension overflow");
    }
  }
  return static_cast<int>(prod);
}

int state_dim(const StateVariant& state) {
  return std::visit([](const auto& s) { return s.dim(); }, state);
}

bool is_pure(const StateVariant& state) {
  return std::holds_alternative<PureState>(state);
}

Matrix state_matrix(const StateVariant& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    return psi->projector();
  }
  return std::get<DensityOperator>(state).matrix();
}

Ensemble::Ensemble(int dim, std::vector<Member> members,
                   std::optional<SubsystemPartition> partition)
    : dim_(dim), partition_(std::move(partition)) {
  if (dim_ < 1) {
    throw DomainError("ensemble dimension must be positive");
  }
  double total = 0.0;
  members_.reserve(members.size());
  for (std::size_t x = 0; x < members.size(); ++x) {
    Member& m = members[x];
    if (!(m.probability >= -kEntropyClamp) || m.probability > 1.0 + kEntropyClamp) {
      std::ostringstream os;
      os << "member " << x << " has probability " << m.probability << " outside [0, 1]";
      throw DomainError(os.str());
    }
    if (state_dim(m.state) != dim_) {
      std::ostringstream os;
      os << "member " << x << " has dimension " << state_dim(m.state) << ", ensemble has "
         << dim_;
      throw DimensionMismatch(os.str());
    }
    total += m.probability;
    if (m.probability < 1e-15) {
      continue;  // zero-weight members carry no information
    }
    members_.push_back(std::move(m));
  }
  if (members_.empty()) {
    throw DomainError("ensemble has no members with positive probability");
  }
  if (std::abs(total - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "member probabilities sum to " << total << ", expected 1 within " << kStateTol;
    throw NormViolation(os.str());
  }
  if (partition_ && partition_->total_dim() != dim_) {
    throw DimensionMismatch("partition product is " +
                            dim_text(partition_->total_dim(), dim_) +
                            " against ambient dimension");
  }
}

bool Ensemble::all_pure() const {
  return std::all_of(members_.begin(), members_.end(),
                     [](const Member& m) { return is_pure(m.state); });
}

Matrix Ensemble::average_state() const {
  Matrix avg = Matrix::Zero(dim_, dim_);
  for (const Member& m : members_) {
    avg += m.probability * state_matrix(m.state);
  }
  return avg;
}

Matrix Ensemble::support_projector(double eig_tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(average_state());
  Matrix proj = Matrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()[i] > eig_tol) {
      const Vector v = solver.eigenvectors().col(i);
      proj += v * v.adjoint();
    }
  }
  return proj;
}

int Ensemble::support_rank(double eig_tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(average_state());
  int rank = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()[i] > eig_tol) {
      ++rank;
    }
  }
  return rank;
}

bool Ensemble::spans_ambient(double eig_tol) const {
  return support_rank(eig_tol) == dim_;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

// Mixed-radix strides for the row-major index convention (subsystem 0 is the
// most significant digit).
std::vector<long> index_strides(const std::vector<int>& dims) {
  std::vector<long> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims[k + 1];
  }
  return strides;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho,
                              const SubsystemPartition& partition,
                              const std::vector<int>& keep) {
  if (partition.total_dim() != rho.dim()) {
    throw DimensionMismatch("partition product " + std::to_string(partition.total_dim()) +
                            " does not match operator dimension " + std::to_string(rho.dim()));
  }
  if (keep.empty()) {
    throw PreconditionViolation("partial trace must keep at least one subsystem");
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= partition.parts()) {
      throw PreconditionViolation("kept subsystem index " + std::to_string(keep[i]) +
                                  " is out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw PreconditionViolation("kept subsystem indices must be strictly increasing");
    }
  }

  std::vector<int> traced;
  for (int k = 0; k < partition.parts(); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) {
      traced.push_back(k);
    }
  }

  const std::vector<long> strides = index_strides(partition.local_dims);
  long keep_dim = 1;
  for (int k : keep) keep_dim *= partition.local_dims[k];
  long traced_dim = 1;
  for (int k : traced) traced_dim *= partition.local_dims[k];

  // Composite index of the full space from a keep-coded and a traced-coded
  // index.  Decoding happens digit by digit, most significant first.
  auto compose = [&](long keep_code, long traced_code) {
    long full = 0;
    long kc = keep_code;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      const int sub = keep[i];
      full += (kc % partition.local_dims[sub]) * strides[sub];
      kc /= partition.local_dims[sub];
    }
    long tc = traced_code;
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      const int sub = traced[i];
      full += (tc % partition.local_dims[sub]) * strides[sub];
      tc /= partition.local_dims[sub];
    }
    return full;
  };

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  const Matrix& m = rho.matrix();
  for (long r = 0; r < keep_dim; ++r) {
    for (long c = 0; c < keep_dim; ++c) {
      Complex sum(0.0, 0.0);
      for (long t = 0; t < traced_dim; ++t) {
        sum += m(compose(r, t), compose(c, t));
      }
      out(r, c) = sum;
    }
  }
  return DensityOperator(std::move(out));
}

std::vector<double> schmidt_coefficients(const PureState& psi,
                                         const SubsystemPartition& partition) {
  if (partition.parts() != 2) {
    throw DimensionMismatch("Schmidt decomposition needs a bipartition, got " +
                            std::to_string(partition.parts()) + " factors");
  }
  const int da = partition.local_dims[0];
  const int db = partition.local_dims[1];
  if (da * db != psi.dim()) {
    throw DimensionMismatch("partition " + std::to_string(da) + "x" + std::to_string(db) +
                            " does not match state dimension " + std::to_string(psi.dim()));
  }
  // Reshape |psi> into the da x db coefficient matrix C; the squared Schmidt
  // coefficients are the eigenvalues of C C^dagger.
  Matrix coeff(da, db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) {
      coeff(i, j) = psi.amplitudes()[i * db + j];
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(coeff * coeff.adjoint());
  std::vector<double> lambdas(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + da);
  for (double& l : lambdas) {
    l = std::clamp(l, 0.0, 1.0);
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

Ensemble extend_with_pure_ancilla(const Ensemble& ensemble, int ancilla_dim) {
  if (ancilla_dim < 1) {
    throw DomainError("ancilla dimension must be positive");
  }
  Vector anc = Vector::Zero(ancilla_dim);
  anc[0] = Complex(1.0, 0.0);
  const Matrix anc_proj = anc * anc.adjoint();

  std::vector<Ensemble::Member> members;
  members.reserve(ensemble.size());
  for (const auto& m : ensemble.members()) {
    if (const auto* psi = std::get_if<PureState>(&m.state)) {
      Vector ext(psi->dim() * ancilla_dim);
      ext.setZero();
      for (int i = 0; i < psi->dim(); ++i) {
        ext[i * ancilla_dim] = psi->amplitudes()[i];
      }
      members.push_back({m.probability, PureState(std::move(ext))});
    } else {
      const auto& rho = std::get<DensityOperator>(m.state);
      members.push_back({m.probability, DensityOperator(tensor_product(rho.matrix(), anc_proj))});
    }
  }

  std::optional<SubsystemPartition> partition;
  if (ensemble.partition()) {
    std::vector<int> dims = ensemble.partition()->local_dims;
    dims.push_back(ancilla_dim);
    partition = SubsystemPartition(std::move(dims));
  }
  return Ensemble(ensemble.dim() * ancilla_dim, std::move(members), std::move(partition));
}

Ensemble apply_unitary(const Ensemble& ensemble, const Matrix& unitary) {
  if (unitary.rows() != ensemble.dim() || unitary.cols() != ensemble.dim()) {
    throw DimensionMismatch("unitary is " + dim_text(unitary.rows(), unitary.cols()) +
                            " but ensemble dimension is " + std::to_string(ensemble.dim()));
  }
  std::vector<Ensemble::Member> members;
  members.reserve(ensemble.size());
  for (const auto& m : ensemble.members()) {
    if (const auto* psi = std::get_if<PureState>(&m.state)) {
      members.push_back({m.probability, PureState(unitary * psi->amplitudes())});
    } else {
      const auto& rho = std::get<DensityOperator>(m.state);
      Matrix rotated = unitary * rho.matrix() * unitary.adjoint();
      // rotation keeps hermiticity up to roundoff; symmetrize before validating
      rotated = ((rotated + rotated.adjoint()) / 2.0).eval();
      members.push_back({m.probability, DensityOperator(std::move(rotated))});
    }
  }
  return Ensemble(ensemble.dim(), std::move(members), ensemble.partition());
}

Ensemble dephase_subsystem(const Ensemble& ensemble, int subsystem,
                           const Matrix& local_unitary) {
  if (!ensemble.partition()) {
    throw MissingPartition("dephasing a subsystem needs a partition");
  }
  const SubsystemPartition& part = *ensemble.partition();
  if (subsystem < 0 || subsystem >= part.parts()) {
    throw PreconditionViolation("subsystem index " + std::to_string(subsystem) +
                                " is out of range");
  }
  const int d_local = part.local_dims[subsystem];
  if (local_unitary.rows() != d_local || local_unitary.cols() != d_local) {
    throw DimensionMismatch("local unitary does not match subsystem dimension " +
                            std::to_string(d_local));
  }

  long before = 1, after = 1;
  for (int k = 0; k < subsystem; ++k) before *= part.local_dims[k];
  for (int k = subsystem + 1; k < part.parts(); ++k) after *= part.local_dims[k];
  const Matrix id_before = Matrix::Identity(before, before);
  const Matrix id_after = Matrix::Identity(after, after);

  std::vector<Matrix> projectors;
  projectors.reserve(d_local);
  for (int j = 0; j < d_local; ++j) {
    const Vector u = local_unitary.col(j);
    projectors.push_back(
        tensor_product(tensor_product(id_before, u * u.adjoint()), id_after));
  }

  std::vector<Ensemble::Member> members;
  members.reserve(ensemble.size());
  for (const auto& m : ensemble.members()) {
    const Matrix rho = state_matrix(m.state);
    Matrix dephased = Matrix::Zero(ensemble.dim(), ensemble.dim());
    for (const Matrix& p : projectors) {
      dephased += p * rho * p;
    }
    dephased = ((dephased + dephased.adjoint()) / 2.0).eval();
    members.push_back({m.probability, DensityOperator(std::move(dephased))});
  }
  return Ensemble(ensemble.dim(), std::move(members), ensemble.partition());
}

}  // namespace qensemble
