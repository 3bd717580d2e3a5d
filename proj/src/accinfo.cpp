#include "qensemble/accinfo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <utility>

namespace qensemble {

Measurement::Measurement(Kind kind, int dim, std::optional<MeasurementBasis> basis,
                         std::vector<Matrix> effects)
    : kind_(kind), dim_(dim), basis_(std::move(basis)), effects_(std::move(effects)) {}

Measurement Measurement::projective_global(MeasurementBasis basis) {
  const int d = basis.dim();
  return Measurement(Kind::ProjectiveGlobal, d, std::move(basis), {});
}

Measurement Measurement::projective_local_product(std::vector<MeasurementBasis> locals) {
  if (locals.empty()) {
    throw DomainError("local-product measurement needs at least one factor");
  }
  // Flatten into one global basis; outcome (k_0, k_1, ...) maps to the
  // row-major composite index, matching the partition convention.
  std::vector<PureState> flat;
  long total = 1;
  for (const MeasurementBasis& b : locals) total *= b.dim();
  flat.reserve(total);
  std::vector<int> digits(locals.size(), 0);
  for (long idx = 0; idx < total; ++idx) {
    Matrix v = locals[0].vector(digits[0]).amplitudes();
    for (std::size_t k = 1; k < locals.size(); ++k) {
      v = tensor_product(v, locals[k].vector(digits[k]).amplitudes());
    }
    flat.emplace_back(Vector(v.col(0)));
    for (int k = static_cast<int>(locals.size()) - 1; k >= 0; --k) {
      if (++digits[k] < locals[k].dim()) break;
      digits[k] = 0;
    }
  }
  MeasurementBasis basis(std::move(flat));  // re-validates orthonormality
  return Measurement(Kind::ProjectiveLocalProduct, static_cast<int>(total),
                     std::move(basis), {});
}

Measurement Measurement::general_povm(std::vector<Matrix> effects) {
  if (effects.empty()) {
    throw InvalidPovm("a POVM needs at least one effect");
  }
  const Eigen::Index d = effects[0].rows();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t y = 0; y < effects.size(); ++y) {
    const Matrix& e = effects[y];
    if (e.rows() != d || e.cols() != d) {
      throw InvalidPovm("effect " + std::to_string(y) + " has inconsistent dimensions");
    }
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
      throw InvalidPovm("effect " + std::to_string(y) + " is not hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(e);
    if (solver.eigenvalues().minCoeff() < -kStateTol) {
      throw InvalidPovm("effect " + std::to_string(y) + " has negative eigenvalue " +
                        std::to_string(solver.eigenvalues().minCoeff()));
    }
    sum += e;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProbTol) {
    throw InvalidPovm("effects do not resolve the identity");
  }
  return Measurement(Kind::GeneralPovm, static_cast<int>(d), std::nullopt,
                     std::move(effects));
}

int Measurement::n_outcomes() const {
  return kind_ == Kind::GeneralPovm ? static_cast<int>(effects_.size()) : dim_;
}

void Measurement::outcome_probabilities(const StateVariant& state,
                                        std::vector<double>& out) const {
  if (state_dim(state) != dim_) {
    throw DimensionMismatch("state dimension does not match measurement dimension");
  }
  if (kind_ != Kind::GeneralPovm) {
    click_probabilities(state, *basis_, out);
    return;
  }
  out.resize(effects_.size());
  if (const auto* psi = std::get_if<PureState>(&state)) {
    for (std::size_t y = 0; y < effects_.size(); ++y) {
      const Vector& a = psi->amplitudes();
      out[y] = std::clamp(std::real(a.dot(effects_[y] * a)), 0.0, 1.0);
    }
  } else {
    const Matrix& rho = std::get<DensityOperator>(state).matrix();
    for (std::size_t y = 0; y < effects_.size(); ++y) {
      out[y] = std::clamp(std::real((effects_[y] * rho).trace()), 0.0, 1.0);
    }
  }
}

double mutual_information(const Ensemble& ensemble, const Measurement& measurement) {
  const int n_signals = ensemble.size();
  const int n_outcomes = measurement.n_outcomes();

  std::vector<double> priors(n_signals);
  RealMatrix table(n_outcomes, n_signals);  // q(y|x)
  std::vector<double> column;
  for (int x = 0; x < n_signals; ++x) {
    priors[x] = ensemble.member(x).probability;
    measurement.outcome_probabilities(ensemble.member(x).state, column);
    for (int y = 0; y < n_outcomes; ++y) {
      table(y, x) = column[y];
    }
  }

  std::vector<double> outcome_marginal(n_outcomes, 0.0);
  for (int y = 0; y < n_outcomes; ++y) {
    for (int x = 0; x < n_signals; ++x) {
      outcome_marginal[y] += priors[x] * table(y, x);
    }
  }

  // Route 1: H(X) - H(X|Y), conditioning the signal on the outcome.
  double forward = shannon_entropy(std::span<const double>(priors));
  std::vector<double> posterior(n_signals);
  for (int y = 0; y < n_outcomes; ++y) {
    if (outcome_marginal[y] <= kEntropyClamp) continue;
    for (int x = 0; x < n_signals; ++x) {
      posterior[x] = priors[x] * table(y, x) / outcome_marginal[y];
    }
    forward -= outcome_marginal[y] * shannon_entropy(std::span<const double>(posterior));
  }

  // Route 2: H(Y) - H(Y|X), conditioning the outcome on the signal.
  double reverse = shannon_entropy(std::span<const double>(outcome_marginal));
  for (int x = 0; x < n_signals; ++x) {
    std::vector<double> clicks(n_outcomes);
    for (int y = 0; y < n_outcomes; ++y) clicks[y] = table(y, x);
    reverse -= priors[x] * shannon_entropy(std::span<const double>(clicks));
  }

  if (std::abs(forward - reverse) > 1e-9) {
    std::ostringstream os;
    os << "mutual information routes disagree: " << forward << " vs " << reverse;
    throw QError(os.str());
  }
  return std::max(forward, 0.0);
}

double accessible_info_projective(const Ensemble& ensemble, const OptimizerConfig& cfg,
                                  bool local) {
  BasisFamily family = BasisFamily::full_unitary();
  if (local) {
    if (!ensemble.partition()) {
      throw MissingPartition("local accessible information needs a partition");
    }
    family = BasisFamily::local_product(*ensemble.partition());
  }
  auto objective = [&ensemble](const MeasurementBasis& basis) {
    return mutual_information(ensemble, Measurement::projective_global(basis));
  };
  return maximize(objective, family, ensemble.dim(), cfg).value;
}

double holevo_bound(const Ensemble& ensemble) {
  double avg_member_entropy = 0.0;
  for (const auto& m : ensemble.members()) {
    if (!is_pure(m.state)) {
      avg_member_entropy +=
          m.probability * von_neumann_entropy(std::get<DensityOperator>(m.state));
    }
  }
  const double total = von_neumann_entropy(DensityOperator(ensemble.average_state()));
  return std::max(total - avg_member_entropy, 0.0);
}

double entanglement_complementarity_bound(const Ensemble& ensemble) {
  if (!ensemble.partition() || ensemble.partition()->parts() != 2) {
    throw MissingPartition("complementarity bound needs a bipartition");
  }
  if (!ensemble.all_pure()) {
    throw NotPure("complementarity bound is only available for pure-state ensembles");
  }
  double avg_entanglement = 0.0;
  for (const auto& m : ensemble.members()) {
    const std::vector<double> lambdas =
        schmidt_coefficients(std::get<PureState>(m.state), *ensemble.partition());
    avg_entanglement += m.probability * shannon_entropy(std::span<const double>(lambdas));
  }
  return std::log2(static_cast<double>(ensemble.dim())) - avg_entanglement;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Confirmed: return "Confirmed";
    case Verdict::Consistent: return "Consistent";
    case Verdict::WitnessOfViolation: return "WitnessOfViolation";
  }
  return "?";
}

ComplementarityReport check_complementarity(const Ensemble& ensemble,
                                            const BasisFamily& family,
                                            const OptimizerConfig& cfg, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
  const int n_states = ensemble.size();
  const double log2_n = std::log2(static_cast<double>(n_states));

  QReport q_report = quantum_correlation(ensemble, family, cfg, CertifyOptions{true, tol, 1e-3});

  // The information side is maximized over the same measurement class the
  // quantumness was minimized over: tensor-local projective bases for
  // locally measurable families, global projective bases otherwise.
  const bool local_class =
      family.kind() != FamilyKind::FullUnitary && ensemble.partition().has_value();
  const double iacc_lower = accessible_info_projective(ensemble, cfg, local_class);

  double iacc_upper = holevo_bound(ensemble);
  std::string upper_source = "Holevo";
  if (local_class && ensemble.partition()->parts() == 2 && ensemble.all_pure()) {
    const double ent_bound = entanglement_complementarity_bound(ensemble);
    if (ent_bound < iacc_upper) {
      iacc_upper = ent_bound;
      upper_source = "entanglement complementarity";
    }
  }

  const std::optional<double> q_exact =
      q_report.direction == BoundDirection::Exact ? std::optional<double>(q_report.value)
                                                  : std::nullopt;
  const std::optional<double> q_lower = q_report.lower_bound;

  // Verdict logic.  Only genuine lower bounds can witness a violation; only
  // genuine upper bounds (or a theorem) can confirm the inequality.
  Verdict verdict = Verdict::Consistent;
  std::string route;
  const double witness_floor = iacc_lower + q_lower.value_or(0.0);
  if (witness_floor > log2_n + tol) {
    verdict = Verdict::WitnessOfViolation;
    route = "achievable information plus certified quantumness lower bound exceeds log2(N)";
  } else if (iacc_upper + q_report.value <= log2_n + tol) {
    verdict = Verdict::Confirmed;
    route = "sum of upper bounds stays below log2(N)";
  } else if (n_states >= ensemble.dim() &&
             ((family.kind() == FamilyKind::FullUnitary && !local_class) ||
              (family.kind() == FamilyKind::LocalProduct && local_class))) {
    // Pointwise identity: for any basis B in the searched class,
    // I(B) + production(B) = H(outcomes) - avg member entropy <= log2(dim),
    // and with N >= dim the right side is at most log2(N).  Maximizing I and
    // minimizing production over the same class therefore cannot break the
    // inequality, independent of optimizer quality.  Requires the
    // information and quantumness searches to run over the same class.
    verdict = Verdict::Confirmed;
    route = "pointwise projective identity (N >= dim) for the searched class";
  } else {
    route = "bounds leave a gap and no theorem applies";
  }

  std::ostringstream details;
  details << std::fixed << std::setprecision(6);
  details << "measurement class: " << (local_class ? "local-product projective" : "global projective")
          << "; iacc in [" << iacc_lower << ", " << iacc_upper << "] (upper via "
          << upper_source << ")";
  details << "; q " << (q_exact ? "= " : "<= ") << q_report.value << " ("
          << to_string(q_report.direction);
  if (q_lower) {
    details << ", lower bound " << *q_lower << " via " << q_report.lower_bound_source;
  }
  details << ", basis " << to_string(q_report.basis_status) << ")";
  const double achieved = iacc_lower + q_report.value;
  details << "; iacc_lower + q = " << achieved << " vs log2(" << n_states
          << ") = " << log2_n;
  if (std::abs(achieved - log2_n) <= 3e-3) {
    details << "; saturates the inequality within 3e-3";
  }
  details << "; verdict route: " << route
          << "; verdict refers to the unregularized measure over the searched class";

  return ComplementarityReport{n_states, log2_n, iacc_lower,    iacc_upper,
                               q_report.value, q_exact, q_lower, verdict,
                               details.str(), std::move(q_report)};
}

bool heisenberg_restricted_check(const Ensemble& ensemble, int samples,
                                 std::uint64_t seed) {
  if (samples < 1) {
    throw DomainError("sample count must be positive");
  }
  if (ensemble.size() < ensemble.dim()) {
    throw PreconditionViolation("pointwise check needs at least as many states as dimensions");
  }
  const int d = ensemble.dim();
  const double log2_n = std::log2(static_cast<double>(ensemble.size()));

  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 eng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s + 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix h(d, d);
    for (int i = 0; i < d; ++i) {
      h(i, i) = Complex(gauss(eng), 0.0);
      for (int j = i + 1; j < d; ++j) {
        h(i, j) = Complex(gauss(eng), gauss(eng));
        h(j, i) = std::conj(h(i, j));
      }
    }
    const MeasurementBasis basis =
        MeasurementBasis::from_unitary_columns(unitary_from_generator(UnitaryPoint(d, h)));
    const double info = mutual_information(ensemble, Measurement::projective_global(basis));
    const double production = entropy_production(ensemble, basis);
    if (info + production > log2_n + 1e-6) {
      return false;
    }
  }
  return true;
}

QubitColumnsObjective mutual_information_columns_objective(const Ensemble& ensemble) {
  if (ensemble.dim() != 2) {
    throw DimensionMismatch("columns objective is only defined for qubit ensembles");
  }
  struct MemberData {
    double probability;
    bool pure;
    Eigen::Vector2cd amps;
    Eigen::Matrix2cd rho;
  };
  std::vector<MemberData> members;
  for (const auto& m : ensemble.members()) {
    MemberData data;
    data.probability = m.probability;
    data.pure = is_pure(m.state);
    if (data.pure) {
      data.amps = std::get<PureState>(m.state).amplitudes();
    } else {
      data.rho = std::get<DensityOperator>(m.state).matrix();
    }
    members.push_back(data);
  }

  auto h2 = [](double p) {
    double h = 0.0;
    if (p > kEntropyClamp) h -= p * std::log2(p);
    if (1.0 - p > kEntropyClamp) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
  };

  return [members, h2](const Eigen::Matrix2cd& u) {
    // I = H(outcome marginal) - sum_x p_x H(clicks of x)
    double marginal = 0.0;
    double conditional = 0.0;
    for (const MemberData& m : members) {
      const double p =
          m.pure ? std::clamp(std::norm(u.col(0).dot(m.amps)), 0.0, 1.0)
                 : std::clamp(std::real(u.col(0).dot(m.rho * u.col(0))), 0.0, 1.0);
      marginal += m.probability * p;
      conditional += m.probability * h2(p);
    }
    return h2(marginal) - conditional;
  };
}

}  // namespace qensemble
