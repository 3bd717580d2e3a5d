// Derivative-free search over basis families: multi-restart Nelder-Mead on
// Hermitian-generator coordinates, an exhaustive grid oracle for single
// qubits, and a random-sampling cross-check.
#pragma once

#include <cstdint>
#include <functional>

#include "qensemble/basis.hpp"

namespace qensemble {

struct OptimizerConfig {
  int restarts = 32;                // restart 0 starts at the canonical basis
  int max_evals_per_restart = 20000;
  std::uint64_t seed = 12345;       // drives every random restart
  double convergence_tol = 1e-9;    // simplex objective-spread threshold
  double simplex_scale = 0.3;       // initial simplex step per coordinate
};

// Hermitian generator G of a basis change U = exp(iG).
struct UnitaryPoint {
  int dim;
  Matrix generator;

  UnitaryPoint(int dim, Matrix generator);
};

// exp(iG) through the spectral decomposition of G.
Matrix unitary_from_generator(const UnitaryPoint& point);

struct OptimizeTrace {
  std::vector<double> best_per_restart;  // achieved objective of each restart
  long total_evals = 0;
  bool budget_exhausted = false;  // winning restart stopped on budget, not convergence
};

struct OptimizeResult {
  double value;
  MeasurementBasis basis;
  OptimizeTrace trace;
};

using BasisObjective = std::function<double(const MeasurementBasis&)>;

// Minimize/maximize the objective over the family.  `ambient_dim` fixes the
// dimension of the searched bases (a LocalProduct family must multiply out
// to it).  Deterministic for a fixed config on a fixed platform; restarts
// are seeded from cfg.seed, and restart 0 always starts at the zero
// generator, i.e. the canonical (computational / explicit) basis.
OptimizeResult minimize(const BasisObjective& objective, const BasisFamily& family,
                        int ambient_dim, const OptimizerConfig& cfg);
OptimizeResult maximize(const BasisObjective& objective, const BasisFamily& family,
                        int ambient_dim, const OptimizerConfig& cfg);

enum class OptMode { Min, Max };

struct GridResult {
  double value;
  double theta;
  double phi;
  double slack;  // neighbor-difference estimate of the refinement error
};

// Objective evaluated directly on the 2x2 unitary whose columns are the
// basis vectors; avoids per-point basis construction in the grid loop.
using QubitColumnsObjective = std::function<double(const Eigen::Matrix2cd&)>;

// Exhaustive scan over single-qubit bases { cos(t)|0> + e^(ip) sin(t)|1>,
// e^(-ip) sin(t)|0> - cos(t)|1> } with t in [0, pi/2], p in [0, 2pi).
// Every qubit basis appears in this chart up to phases and relabeling, so
// the scan brackets the true extremum up to the reported slack.
GridResult qubit_grid_oracle(const QubitColumnsObjective& objective, double resolution,
                             OptMode mode);
GridResult qubit_grid_oracle(const BasisObjective& objective, double resolution,
                             OptMode mode);

// Best objective value over `samples` random bases from the family
// (Gaussian Hermitian generators, exponentiated).  A cheap independent
// bracket for optimizer results in any dimension.
double random_sampling_oracle(const BasisObjective& objective, const BasisFamily& family,
                              int ambient_dim, int samples, std::uint64_t seed,
                              OptMode mode);

}  // namespace qensemble
