// Command-line front end: quantumness of an ensemble, accessible
// information, the complementarity check, the reference catalog, and
// exploratory CSV sweeps.  See README.md for file formats and examples.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qensemble/accinfo.hpp"
#include "qensemble/catalog.hpp"
#include "qensemble/ensemble_io.hpp"
#include "qensemble/qmeasure.hpp"
#include "qensemble/sampling.hpp"

namespace {

using nlohmann::json;
using namespace qensemble;

constexpr const char* kToolVersion = "1.0.0";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QENSEMBLE_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const std::uint64_t value = std::stoull(text, &used);
      if (used != text.size()) {
        throw std::invalid_argument(text);
      }
      return value;
    } catch (const std::exception&) {
      throw ParseError("QENSEMBLE_SEED must be an unsigned integer");
    }
  }
  return 12345;
}

// Options shared by every command that runs the basis optimizer.
struct SearchOptions {
  std::string family = "full";
  int restarts = 32;
  int max_evals = 20000;
  std::uint64_t seed = 12345;
  double convergence_tol = 1e-9;
  double simplex_scale = 0.3;
  double tol = kCertifyTolDefault;
  double grid_resolution = 1e-3;
  bool certify = false;
  std::string out_path;
};

void add_optimizer_flags(CLI::App* cmd, SearchOptions& opt) {
  cmd->add_option("--restarts", opt.restarts, "optimizer restarts (first is the canonical basis)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-evals", opt.max_evals, "objective evaluations per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed,
                  "random seed (default: QENSEMBLE_SEED env var, else 12345)");
  cmd->add_option("--tol", opt.tol, "comparison/certification tolerance");
}

OptimizerConfig make_config(const SearchOptions& opt) {
  OptimizerConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.max_evals_per_restart = opt.max_evals;
  cfg.seed = opt.seed;
  cfg.convergence_tol = opt.convergence_tol;
  cfg.simplex_scale = opt.simplex_scale;
  return cfg;
}

json config_json(const SearchOptions& opt, const std::string& ensemble_path) {
  json cfg;
  cfg["ensemble"] = ensemble_path;
  cfg["family"] = opt.family;
  cfg["restarts"] = opt.restarts;
  cfg["max_evals_per_restart"] = opt.max_evals;
  cfg["seed"] = opt.seed;
  cfg["convergence_tol"] = opt.convergence_tol;
  cfg["simplex_scale"] = opt.simplex_scale;
  cfg["tol"] = opt.tol;
  cfg["certify"] = opt.certify;
  cfg["grid_resolution"] = opt.grid_resolution;
  return cfg;
}

BasisFamily resolve_family(const std::string& family, const Ensemble& ensemble) {
  if (family == "full") {
    return BasisFamily::full_unitary();
  }
  if (family == "local-product") {
    if (!ensemble.partition()) {
      throw MissingPartition(
          "--family local-product needs a \"subsystems\" field in the ensemble file");
    }
    return BasisFamily::local_product(*ensemble.partition());
  }
  const std::string prefix = "explicit:";
  if (family.rfind(prefix, 0) == 0) {
    ExplicitBasisSpec spec = load_basis_file(family.substr(prefix.size()));
    return BasisFamily::explicit_basis(std::move(spec.basis), spec.certified,
                                       std::move(spec.certificate_note));
  }
  throw ParseError("--family must be full, local-product, or explicit:<basis.json>");
}

json basis_json(const MeasurementBasis& basis) {
  json vectors = json::array();
  for (int i = 0; i < basis.dim(); ++i) {
    json amps = json::array();
    for (int j = 0; j < basis.dim(); ++j) {
      const Complex& c = basis.vector(i).amplitudes()[j];
      amps.push_back(json::array({c.real(), c.imag()}));
    }
    vectors.push_back(std::move(amps));
  }
  return vectors;
}

json trace_json(const OptimizeTrace& trace) {
  json t;
  t["best_per_restart"] = trace.best_per_restart;
  t["total_evals"] = trace.total_evals;
  t["budget_exhausted"] = trace.budget_exhausted;
  return t;
}

json qreport_json(const QReport& report) {
  json r;
  r["value"] = report.value;
  r["direction"] = to_string(report.direction);
  if (report.lower_bound) {
    r["lower_bound"] = *report.lower_bound;
    r["lower_bound_source"] = report.lower_bound_source;
  }
  r["basis_status"] = to_string(report.basis_status);
  r["negative_noise_flagged"] = report.negative_noise_flagged;
  r["achieving_basis"] = basis_json(report.achieving_basis);
  r["trace"] = trace_json(report.trace);
  return r;
}

json check_json(const ComplementarityReport& report) {
  json r;
  r["n_states"] = report.n_states;
  r["log2_n"] = report.log2_n;
  r["iacc_lower"] = report.iacc_lower;
  r["iacc_upper"] = report.iacc_upper;
  r["q_upper"] = report.q_upper;
  if (report.q_exact) {
    r["q_exact"] = *report.q_exact;
  }
  if (report.q_lower) {
    r["q_lower"] = *report.q_lower;
  }
  r["verdict"] = to_string(report.verdict);
  r["details"] = report.details;
  r["q_report"] = qreport_json(report.q_report);
  return r;
}

void emit_report(const std::string& command, const json& config, const json& results,
                 double wall_seconds, const std::string& out_path) {
  json report;
  report["command"] = command;
  report["config"] = config;
  report["results"] = results;
  report["wall_clock_seconds"] = wall_seconds;
  report["library_version"] = kToolVersion;
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw QError("cannot write report to " + out_path);
    }
    out << report.dump(2) << "\n";
  }
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------- commands

int cmd_q(const std::string& ensemble_path, const SearchOptions& opt, bool csv) {
  const WallClock clock;
  const Ensemble ensemble = load_ensemble_file(ensemble_path);
  const BasisFamily family = resolve_family(opt.family, ensemble);
  CertifyOptions certify_opts;
  certify_opts.attempt = opt.certify;
  certify_opts.tol = opt.tol;
  certify_opts.grid_resolution = opt.grid_resolution;
  // The qubit grid bracket is cheap and makes dim-2 full searches exact;
  // keep it on even without --certify.
  if (family.kind() == FamilyKind::FullUnitary && ensemble.dim() == 2) {
    certify_opts.attempt = true;
  }
  const QReport report =
      quantum_correlation(ensemble, family, make_config(opt), certify_opts);

  if (csv) {
    std::cout << "value,direction,lower_bound,lower_bound_source,basis_status,"
                 "total_evals,budget_exhausted\n";
    std::cout << std::setprecision(17) << report.value << "," << to_string(report.direction)
              << "," << (report.lower_bound ? std::to_string(*report.lower_bound) : "")
              << "," << report.lower_bound_source << "," << to_string(report.basis_status)
              << "," << report.trace.total_evals << ","
              << (report.trace.budget_exhausted ? 1 : 0) << "\n";
  } else {
    emit_report("q", config_json(opt, ensemble_path), qreport_json(report), clock.seconds(),
                opt.out_path);
  }
  return report.trace.budget_exhausted ? 3 : 0;
}

int cmd_iacc(const std::string& ensemble_path, const SearchOptions& opt, bool local,
             bool bounds) {
  const WallClock clock;
  const Ensemble ensemble = load_ensemble_file(ensemble_path);
  const double lower = accessible_info_projective(ensemble, make_config(opt), local);

  json results;
  results["iacc_lower"] = lower;
  results["measurement_class"] = local ? "local-product projective" : "global projective";
  if (bounds) {
    results["holevo_upper"] = holevo_bound(ensemble);
    if (ensemble.partition() && ensemble.partition()->parts() == 2 && ensemble.all_pure()) {
      results["entanglement_upper"] = entanglement_complementarity_bound(ensemble);
    }
  }
  json cfg = config_json(opt, ensemble_path);
  cfg["local"] = local;
  emit_report("iacc", cfg, results, clock.seconds(), opt.out_path);
  return 0;
}

int cmd_check(const std::string& ensemble_path, const SearchOptions& opt) {
  const WallClock clock;
  const Ensemble ensemble = load_ensemble_file(ensemble_path);
  const BasisFamily family = resolve_family(opt.family, ensemble);
  const ComplementarityReport report =
      check_complementarity(ensemble, family, make_config(opt), opt.tol);
  emit_report("check", config_json(opt, ensemble_path), check_json(report), clock.seconds(),
              opt.out_path);
  return report.verdict == Verdict::WitnessOfViolation ? 4 : 0;
}

struct MetricRow {
  std::string entry;
  std::string metric;
  double computed;
  double expected;
  ExpectedValue::Direction direction;
  bool pass;
};

bool check_expectation(double computed, const ExpectedValue& expected, double tol) {
  switch (expected.direction) {
    case ExpectedValue::Direction::Exact:
      return std::abs(computed - expected.value) <= tol;
    case ExpectedValue::Direction::UpperBound:
      return computed <= expected.value + tol;
    case ExpectedValue::Direction::LowerBound:
      return computed >= expected.value - tol;
  }
  return false;
}

int run_catalog_entries(const std::vector<CatalogEntry>& entries, const SearchOptions& opt) {
  std::vector<MetricRow> rows;
  for (const CatalogEntry& entry : entries) {
    const OptimizerConfig cfg = make_config(opt);
    if (entry.expected_q) {
      const QReport report = quantum_correlation(
          entry.ensemble, entry.family, cfg, CertifyOptions{true, opt.tol, opt.grid_resolution});
      rows.push_back({entry.name, "Q", report.value, entry.expected_q->value,
                      entry.expected_q->direction,
                      check_expectation(report.value, *entry.expected_q, opt.tol)});
    }
    if (entry.expected_iacc) {
      const bool local =
          entry.family.kind() != FamilyKind::FullUnitary && entry.ensemble.partition();
      const double info = accessible_info_projective(entry.ensemble, cfg, local);
      rows.push_back({entry.name, "I_acc", info, entry.expected_iacc->value,
                      entry.expected_iacc->direction,
                      check_expectation(info, *entry.expected_iacc, opt.tol)});
    }
  }

  bool all_pass = true;
  std::cout << std::left << std::setw(14) << "entry" << std::setw(7) << "metric"
            << std::right << std::setw(11) << "computed" << std::setw(11) << "expected"
            << "  " << std::left << std::setw(13) << "direction" << "result\n";
  std::cout << std::string(62, '-') << "\n";
  for (const MetricRow& row : rows) {
    std::cout << std::left << std::setw(14) << row.entry << std::setw(7) << row.metric
              << std::right << std::fixed << std::setprecision(6) << std::setw(11)
              << row.computed << std::setw(11) << row.expected << "  " << std::left
              << std::setw(13) << to_string(row.direction) << (row.pass ? "PASS" : "FAIL")
              << "\n";
    all_pass = all_pass && row.pass;
  }
  std::cout << (all_pass ? "all expectations met\n" : "some expectations FAILED\n");
  return all_pass ? 0 : 1;
}

CatalogEntry catalog_entry_by_name(const std::string& name, double a_sq, double c_sq,
                                   double angle) {
  if (name == "bell-four") return bell_four();
  if (name == "b-prime") return b_prime_real(a_sq, c_sq);
  if (name == "canonical-d2") return canonical_maxent(2);
  if (name == "canonical-d3") return canonical_maxent(3);
  if (name == "three-bell") return three_bell();
  if (name == "two-state") return two_state_qubit(angle);
  throw ParseError("unknown catalog entry \"" + name + "\" (see `catalog list`)");
}

int cmd_catalog_list() {
  for (const CatalogEntry& entry : default_catalog()) {
    std::cout << std::left << std::setw(14) << entry.name << entry.provenance << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ sweeps

std::ostream& open_sweep_output(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) {
    return std::cout;
  }
  file.open(out_path);
  if (!file) {
    throw QError("cannot write CSV to " + out_path);
  }
  return file;
}

// Pointwise information/production budget on random ensembles and bases.
void sweep_random_heisenberg(std::ostream& out, int samples, int bases,
                             std::uint64_t seed) {
  out << "sample,seed,dim,n_states,kind,log2_n,max_info_plus_production,slack,"
         "candidate_counterexample\n";
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = seed + 1000003ULL * static_cast<std::uint64_t>(s);
    Rng rng(sample_seed);
    const int n_states = 2 + s % 3;
    const int dim = 2 + (n_states > 2 ? s % (n_states - 1) : 0);
    const bool mixed = (s % 2) == 1;
    const Ensemble ensemble = mixed ? random_mixed_ensemble(rng, dim, n_states)
                                    : random_pure_ensemble(rng, dim, n_states);
    const double log2_n = std::log2(static_cast<double>(n_states));

    double worst = 0.0;
    for (int b = 0; b < bases; ++b) {
      const MeasurementBasis basis =
          MeasurementBasis::from_unitary_columns(random_unitary(rng, dim));
      const double info =
          mutual_information(ensemble, Measurement::projective_global(basis));
      const double production = entropy_production(ensemble, basis);
      worst = std::max(worst, info + production);
    }
    const double slack = log2_n - worst;
    out << s << "," << sample_seed << "," << dim << "," << n_states << ","
        << (mixed ? "mixed" : "pure") << "," << std::setprecision(17) << log2_n << ","
        << worst << "," << slack << "," << (slack < -1e-6 ? 1 : 0) << "\n";
  }
}

// Gap between the optimized quantumness and the entanglement-based floor on
// a grid of b-prime ensembles.
void sweep_er_gap(std::ostream& out, int samples, std::uint64_t seed,
                  const OptimizerConfig& cfg) {
  out << "sample,seed,a_sq,c_sq,n_states,dim,q_upper,er_lower,extended_lower,slack,"
         "candidate_counterexample\n";
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = seed + 1000003ULL * static_cast<std::uint64_t>(s);
    Rng rng(sample_seed);
    std::uniform_real_distribution<double> amp(0.05, 0.95);
    const double a_sq = amp(rng);
    const double c_sq = amp(rng);
    const CatalogEntry entry = b_prime_real(a_sq, c_sq);

    OptimizerConfig sample_cfg = cfg;
    sample_cfg.seed = sample_seed;
    const QReport report = quantum_correlation(entry.ensemble, entry.family, sample_cfg,
                                               CertifyOptions{false, 1e-4, 1e-3});
    const double er = avg_entanglement_lower_bound(entry.ensemble);
    const double extended =
        er + std::log2(static_cast<double>(entry.ensemble.size())) -
        std::log2(static_cast<double>(entry.ensemble.dim()));
    const double slack = report.value - extended;
    out << s << "," << sample_seed << "," << std::setprecision(17) << a_sq << "," << c_sq
        << "," << entry.ensemble.size() << "," << entry.ensemble.dim() << ","
        << report.value << "," << er << "," << extended << "," << slack << ","
        << (slack < -1e-6 ? 1 : 0) << "\n";
  }
}

// Quantumness of the four-Bell ensemble before and after dephasing one
// subsystem in a random local basis.  Purely exploratory: rows record the
// change, nothing is asserted.
void sweep_local_dephasing(std::ostream& out, int samples, std::uint64_t seed,
                           const OptimizerConfig& cfg) {
  out << "sample,seed,subsystem,q_before,q_after,delta,candidate_counterexample\n";
  const CatalogEntry base = bell_four();
  const QReport before = quantum_correlation(base.ensemble, base.family, cfg,
                                             CertifyOptions{true, 1e-4, 1e-3});
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = seed + 1000003ULL * static_cast<std::uint64_t>(s);
    Rng rng(sample_seed);
    const int subsystem = s % 2;
    const Matrix local = random_unitary(rng, 2);
    const Ensemble dephased = dephase_subsystem(base.ensemble, subsystem, local);

    OptimizerConfig sample_cfg = cfg;
    sample_cfg.seed = sample_seed;
    const QReport after = quantum_correlation(dephased, base.family, sample_cfg,
                                              CertifyOptions{false, 1e-4, 1e-3});
    const double delta = after.value - before.value;
    out << s << "," << sample_seed << "," << subsystem << "," << std::setprecision(17)
        << before.value << "," << after.value << "," << delta << ","
        << (delta > 1e-6 ? 1 : 0) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantumness of an ensemble: dephasing-entropy measure, accessible "
               "information, and complementarity checks"};
  app.require_subcommand(1);

  SearchOptions opt;
  int exit_code = 0;

  try {
    opt.seed = default_seed();

    // ---- q
    std::string ensemble_path;
    bool csv = false;
    CLI::App* q = app.add_subcommand("q", "minimize dephasing entropy production");
    q->add_option("ensemble", ensemble_path, "ensemble JSON file")->required();
    q->add_option("--family", opt.family,
                  "search family: full | local-product | explicit:<basis.json>");
    q->add_flag("--certify", opt.certify,
                "attach the entanglement lower bound when preconditions hold");
    q->add_option("--grid-resolution", opt.grid_resolution,
                  "qubit grid step for dim-2 certification");
    q->add_option("--out", opt.out_path, "write the JSON report here instead of stdout");
    q->add_flag("--csv", csv, "emit a CSV line instead of the JSON report");
    add_optimizer_flags(q, opt);
    q->callback([&] { exit_code = cmd_q(ensemble_path, opt, csv); });

    // ---- iacc
    bool local = false;
    bool bounds = false;
    CLI::App* iacc = app.add_subcommand("iacc", "maximize mutual information over "
                                                "projective measurements");
    iacc->add_option("ensemble", ensemble_path, "ensemble JSON file")->required();
    iacc->add_flag("--local", local, "restrict to tensor products of local bases");
    iacc->add_flag("--bounds", bounds, "also print the Holevo and entanglement uppers");
    iacc->add_option("--out", opt.out_path, "write the JSON report here instead of stdout");
    add_optimizer_flags(iacc, opt);
    iacc->callback([&] { exit_code = cmd_iacc(ensemble_path, opt, local, bounds); });

    // ---- check
    CLI::App* check = app.add_subcommand("check", "test iacc + q <= log2(N)");
    check->add_option("ensemble", ensemble_path, "ensemble JSON file")->required();
    check->add_option("--family", opt.family,
                      "search family: full | local-product | explicit:<basis.json>");
    check->add_option("--out", opt.out_path, "write the JSON report here instead of stdout");
    add_optimizer_flags(check, opt);
    check->callback([&] { exit_code = cmd_check(ensemble_path, opt); });

    // ---- catalog
    CLI::App* catalog = app.add_subcommand("catalog", "reference ensembles with known values");
    catalog->require_subcommand(1);
    CLI::App* list = catalog->add_subcommand("list", "print entry names and provenance");
    list->callback([&] { exit_code = cmd_catalog_list(); });

    std::string entry_name;
    double a_sq = 0.3, c_sq = 0.5, angle = std::numbers::pi / 4.0;
    CLI::App* run = catalog->add_subcommand("run", "run one entry and compare to its "
                                                   "expectations");
    run->add_option("name", entry_name, "entry name (see `catalog list`)")->required();
    run->add_option("--a2", a_sq, "b-prime |a|^2");
    run->add_option("--c2", c_sq, "b-prime |c|^2");
    run->add_option("--angle", angle, "two-state angle in radians");
    add_optimizer_flags(run, opt);
    run->callback([&] {
      exit_code = run_catalog_entries({catalog_entry_by_name(entry_name, a_sq, c_sq, angle)},
                                      opt);
    });

    CLI::App* run_all = catalog->add_subcommand("run-all", "run every entry");
    add_optimizer_flags(run_all, opt);
    run_all->callback([&] { exit_code = run_catalog_entries(default_catalog(), opt); });

    // ---- sweep
    std::string kind;
    int samples = 20;
    int bases = 200;
    CLI::App* sweep = app.add_subcommand("sweep", "exploratory CSV sweeps over the "
                                                  "paper-level conjectures");
    sweep->add_option("--kind", kind,
                      "conjecture-ER-gap | local-dephasing-monotonicity | random-heisenberg")
        ->required()
        ->check(CLI::IsMember({"conjecture-ER-gap", "local-dephasing-monotonicity",
                               "random-heisenberg"}));
    sweep->add_option("--samples", samples, "rows to emit")->check(CLI::PositiveNumber);
    sweep->add_option("--bases", bases, "random bases per sample (random-heisenberg)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", opt.out_path, "write CSV here instead of stdout");
    add_optimizer_flags(sweep, opt);
    sweep->callback([&] {
      std::ofstream file;
      std::ostream& out = open_sweep_output(file, opt.out_path);
      OptimizerConfig cfg = make_config(opt);
      if (kind == "random-heisenberg") {
        sweep_random_heisenberg(out, samples, bases, opt.seed);
      } else if (kind == "conjecture-ER-gap") {
        sweep_er_gap(out, samples, opt.seed, cfg);
      } else {
        sweep_local_dephasing(out, samples, opt.seed, cfg);
      }
      exit_code = 0;
    });

    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const QError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
