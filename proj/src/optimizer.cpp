#include "qensemble/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace qensemble {

UnitaryPoint::UnitaryPoint(int dim_in, Matrix generator_in)
    : dim(dim_in), generator(std::move(generator_in)) {
  if (dim < 1 || generator.rows() != dim || generator.cols() != dim) {
    throw DimensionMismatch("generator must be a square matrix of the stated dimension");
  }
  const double gap = (generator - generator.adjoint()).cwiseAbs().maxCoeff();
  if (gap > kStateTol) {
    throw DomainError("generator is not hermitian (max deviation " + std::to_string(gap) + ")");
  }
}

namespace {

// exp(iH) for hermitian H via spectral decomposition.
Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::Index d = h.rows();
  Vector phases(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    phases[k] = std::exp(Complex(0.0, solver.eigenvalues()[k]));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Real coordinates of a hermitian matrix: d diagonal entries followed by
// (re, im) pairs of the strict upper triangle, row by row.
int param_count(int d) { return d * d; }

Matrix hermitian_from_params(int d, const double* x) {
  Matrix h(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    h(i, i) = Complex(x[k++], 0.0);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex v(x[k], x[k + 1]);
      k += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

// Coordinate chart of a basis family: one hermitian generator block per
// factor, the basis being the Kronecker product of the exponentials.
struct FamilyChart {
  std::vector<int> block_dims;
  int n_params = 0;

  static FamilyChart for_family(const BasisFamily& family, int ambient_dim) {
    FamilyChart chart;
    if (family.kind() == FamilyKind::FullUnitary) {
      chart.block_dims = {ambient_dim};
    } else if (family.kind() == FamilyKind::LocalProduct) {
      if (family.partition().total_dim() != ambient_dim) {
        throw DimensionMismatch("local-product partition multiplies out to " +
                                std::to_string(family.partition().total_dim()) +
                                ", expected " + std::to_string(ambient_dim));
      }
      chart.block_dims = family.partition().local_dims;
    } else {
      throw PreconditionViolation("explicit families have no search coordinates");
    }
    for (int d : chart.block_dims) {
      chart.n_params += param_count(d);
    }
    return chart;
  }

  Matrix to_unitary(const Eigen::VectorXd& x) const {
    Matrix u;
    int offset = 0;
    for (std::size_t b = 0; b < block_dims.size(); ++b) {
      const Matrix block = exp_i_hermitian(hermitian_from_params(block_dims[b], x.data() + offset));
      offset += param_count(block_dims[b]);
      u = (b == 0) ? block : tensor_product(u, block);
    }
    return u;
  }

  MeasurementBasis to_basis(const Eigen::VectorXd& x) const {
    return MeasurementBasis::from_unitary_columns(to_unitary(x));
  }
};

struct SimplexOutcome {
  double value = 0.0;
  Eigen::VectorXd point;
  long evals = 0;
  bool converged = false;
};

// Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and
// shrink 0.5.  Stops when the objective spread over the simplex drops below
// ftol or the evaluation budget runs out.
SimplexOutcome nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& start, double step, double ftol,
                           long max_evals) {
  const int n = static_cast<int>(start.size());
  SimplexOutcome out;
  if (n == 0) {
    out.value = f(start);
    out.point = start;
    out.evals = 1;
    out.converged = true;
    return out;
  }

  std::vector<Eigen::VectorXd> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  auto eval = [&](const Eigen::VectorXd& x) {
    ++out.evals;
    return f(x);
  };
  // The initial simplex is always evaluated in full (the budget may overshoot
  // by at most n evals) so the bookkeeping below never sees stale values.
  fs[0] = eval(xs[0]);
  for (int i = 0; i < n; ++i) {
    xs[i + 1][i] += step;
    fs[i + 1] = eval(xs[i + 1]);
  }

  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  auto sort_simplex = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
  };

  while (true) {
    sort_simplex();
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];
    if (fs[worst] - fs[best] < ftol) {
      out.converged = true;
      break;
    }
    if (out.evals >= max_evals) {
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += xs[i];
    }
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - xs[worst]);
    const double fr = eval(reflected);
    if (fr < fs[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        xs[worst] = expanded;
        fs[worst] = fe;
      } else {
        xs[worst] = reflected;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second_worst]) {
      xs[worst] = reflected;
      fs[worst] = fr;
      continue;
    }

    if (fr < fs[worst]) {
      // outside contraction
      const Eigen::VectorXd contracted = centroid + 0.5 * (reflected - centroid);
      const double fc = eval(contracted);
      if (fc <= fr) {
        xs[worst] = contracted;
        fs[worst] = fc;
        continue;
      }
    } else {
      // inside contraction
      const Eigen::VectorXd contracted = centroid - 0.5 * (centroid - xs[worst]);
      const double fc = eval(contracted);
      if (fc < fs[worst]) {
        xs[worst] = contracted;
        fs[worst] = fc;
        continue;
      }
    }

    // shrink towards the best vertex
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
      fs[i] = eval(xs[i]);
    }
  }

  sort_simplex();
  out.value = fs[order[0]];
  out.point = xs[order[0]];
  return out;
}

std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
  // splitmix-style stream separation so restarts never share draws
  return std::mt19937_64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart));
}

Eigen::VectorXd gaussian_start(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = gauss(eng);
  }
  return x;
}

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) {
    throw PreconditionViolation("optimizer needs at least one restart");
  }
  if (cfg.max_evals_per_restart < 2) {
    throw PreconditionViolation("evaluation budget per restart is too small");
  }
  if (!(cfg.convergence_tol > 0.0) || !(cfg.simplex_scale > 0.0)) {
    throw PreconditionViolation("convergence tolerance and simplex scale must be positive");
  }
}

OptimizeResult optimize(const BasisObjective& objective, const BasisFamily& family,
                        int ambient_dim, const OptimizerConfig& cfg, OptMode mode) {
  validate_config(cfg);
  if (ambient_dim < 1) {
    throw DomainError("ambient dimension must be positive");
  }
  const double sign = (mode == OptMode::Min) ? 1.0 : -1.0;

  if (family.kind() == FamilyKind::Explicit) {
    const MeasurementBasis& basis = family.explicit_spec().basis;
    if (basis.dim() != ambient_dim) {
      throw DimensionMismatch("explicit basis dimension " + std::to_string(basis.dim()) +
                              " does not match ambient dimension " +
                              std::to_string(ambient_dim));
    }
    const double value = objective(basis);
    OptimizeTrace trace;
    trace.best_per_restart = {value};
    trace.total_evals = 1;
    return OptimizeResult{value, basis, std::move(trace)};
  }

  const FamilyChart chart = FamilyChart::for_family(family, ambient_dim);
  auto signed_objective = [&](const Eigen::VectorXd& x) {
    return sign * objective(chart.to_basis(x));
  };

  OptimizeTrace trace;
  SimplexOutcome best;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd start;
    if (r == 0) {
      start = Eigen::VectorXd::Zero(chart.n_params);  // canonical basis
    } else {
      std::mt19937_64 eng = restart_engine(cfg.seed, r);
      start = gaussian_start(eng, chart.n_params);
    }
    SimplexOutcome outcome = nelder_mead(signed_objective, start, cfg.simplex_scale,
                                         cfg.convergence_tol, cfg.max_evals_per_restart);
    trace.best_per_restart.push_back(sign * outcome.value);
    trace.total_evals += outcome.evals;
    if (!have_best || outcome.value < best.value) {
      best = std::move(outcome);
      have_best = true;
    }
  }
  trace.budget_exhausted = !best.converged;
  return OptimizeResult{sign * best.value, chart.to_basis(best.point), std::move(trace)};
}

}  // namespace

Matrix unitary_from_generator(const UnitaryPoint& point) {
  return exp_i_hermitian(point.generator);
}

OptimizeResult minimize(const BasisObjective& objective, const BasisFamily& family,
                        int ambient_dim, const OptimizerConfig& cfg) {
  return optimize(objective, family, ambient_dim, cfg, OptMode::Min);
}

OptimizeResult maximize(const BasisObjective& objective, const BasisFamily& family,
                        int ambient_dim, const OptimizerConfig& cfg) {
  return optimize(objective, family, ambient_dim, cfg, OptMode::Max);
}

GridResult qubit_grid_oracle(const QubitColumnsObjective& objective, double resolution,
                             OptMode mode) {
  if (!(resolution > 0.0) || resolution > 0.5) {
    throw DomainError("grid resolution must lie in (0, 0.5]");
  }
  const double half_pi = std::asin(1.0);
  const double two_pi = 4.0 * half_pi;
  const long n_theta = static_cast<long>(std::ceil(half_pi / resolution)) + 1;
  const long n_phi = static_cast<long>(std::ceil(two_pi / resolution));
  const double sign = (mode == OptMode::Min) ? 1.0 : -1.0;

  Eigen::Matrix2cd u;
  auto eval_point = [&](double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex phase = std::exp(Complex(0.0, phi));
    u(0, 0) = Complex(c, 0.0);
    u(1, 0) = phase * s;
    u(0, 1) = -std::conj(phase) * s;
    u(1, 1) = Complex(c, 0.0);
    return sign * objective(u);
  };

  double best = 0.0;
  double best_theta = 0.0;
  double best_phi = 0.0;
  bool first = true;
  for (long i = 0; i < n_theta; ++i) {
    const double theta = std::min(i * resolution, half_pi);
    // at theta = 0 the basis does not depend on phi; one sample is enough
    const long phi_count = (i == 0) ? 1 : n_phi;
    for (long j = 0; j < phi_count; ++j) {
      const double phi = j * resolution;
      const double value = eval_point(theta, phi);
      if (first || value < best) {
        best = value;
        best_theta = theta;
        best_phi = phi;
        first = false;
      }
    }
  }

  // Neighbor spread around the winning point gauges how much the extremum
  // can still move between grid nodes.
  double spread = 0.0;
  const double theta_lo = std::max(best_theta - resolution, 0.0);
  const double theta_hi = std::min(best_theta + resolution, half_pi);
  const double phi_lo = std::fmod(best_phi - resolution + two_pi, two_pi);
  const double phi_hi = std::fmod(best_phi + resolution, two_pi);
  for (const auto& [t, p] : {std::pair{theta_lo, best_phi}, std::pair{theta_hi, best_phi},
                             std::pair{best_theta, phi_lo}, std::pair{best_theta, phi_hi}}) {
    spread = std::max(spread, std::abs(eval_point(t, p) - best));
  }

  return GridResult{sign * best, best_theta, best_phi, 2.0 * spread + 1e-12};
}

GridResult qubit_grid_oracle(const BasisObjective& objective, double resolution,
                             OptMode mode) {
  auto columns_objective = [&](const Eigen::Matrix2cd& u) {
    return objective(MeasurementBasis::from_unitary_columns(u));
  };
  return qubit_grid_oracle(QubitColumnsObjective(columns_objective), resolution, mode);
}

double random_sampling_oracle(const BasisObjective& objective, const BasisFamily& family,
                              int ambient_dim, int samples, std::uint64_t seed,
                              OptMode mode) {
  if (samples < 1) {
    throw DomainError("sampling oracle needs at least one sample");
  }
  if (family.kind() == FamilyKind::Explicit) {
    return objective(family.explicit_spec().basis);
  }
  const FamilyChart chart = FamilyChart::for_family(family, ambient_dim);
  const double sign = (mode == OptMode::Min) ? 1.0 : -1.0;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 eng = restart_engine(seed, s);
    const Eigen::VectorXd x = gaussian_start(eng, chart.n_params);
    const double value = sign * objective(chart.to_basis(x));
    if (s == 0 || value < best) {
      best = value;
    }
  }
  return sign * best;
}

}  // namespace qensemble
