#include "qensemble/ensemble_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace qensemble {

namespace {

using nlohmann::json;

// Drift budget for hand-written files: norms, traces and probability sums
// within this window are silently renormalized, anything worse is an error.
constexpr double kInputDrift = 1e-6;

Complex parse_complex(const json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number()) {
    throw ParseError(field + ": expected a [re, im] number pair");
  }
  return Complex(node[0].get<double>(), node[1].get<double>());
}

json complex_to_json(const Complex& c) {
  return json::array({c.real(), c.imag()});
}

const json& require_field(const json& doc, const std::string& name,
                          const std::string& context) {
  const auto it = doc.find(name);
  if (it == doc.end()) {
    throw ParseError(context + ": missing field \"" + name + "\"");
  }
  return *it;
}

void require_version(const json& doc, const std::string& context) {
  const json& version = require_field(doc, "format_version", context);
  if (!version.is_string() || version.get<std::string>() != "1") {
    throw ParseError(context + ".format_version: expected \"1\"");
  }
}

int parse_dim(const json& doc, const std::string& context) {
  const json& dim = require_field(doc, "dim", context);
  if (!dim.is_number_integer() || dim.get<long>() < 1) {
    throw ParseError(context + ".dim: expected a positive integer");
  }
  return dim.get<int>();
}

Vector parse_amplitudes(const json& node, int dim, const std::string& field) {
  if (!node.is_array() || static_cast<int>(node.size()) != dim) {
    throw ParseError(field + ": expected " + std::to_string(dim) + " entries, got " +
                     std::to_string(node.is_array() ? node.size() : 0));
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = parse_complex(node[i], field + "[" + std::to_string(i) + "]");
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > kInputDrift) {
    std::ostringstream os;
    os << field << ": norm is " << norm << ", further than " << kInputDrift << " from 1";
    throw ParseError(os.str());
  }
  v /= norm;
  return v;
}

}  // namespace

Ensemble parse_ensemble_json(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("ensemble file: expected a JSON object");
  }
  require_version(doc, "ensemble file");
  const int dim = parse_dim(doc, "ensemble file");

  std::optional<SubsystemPartition> partition;
  if (doc.contains("subsystems")) {
    const json& subs = doc["subsystems"];
    if (!subs.is_array() || subs.empty()) {
      throw ParseError("subsystems: expected a non-empty array of dimensions");
    }
    std::vector<int> dims;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (!subs[k].is_number_integer() || subs[k].get<long>() < 1) {
        throw ParseError("subsystems[" + std::to_string(k) +
                         "]: expected a positive integer");
      }
      dims.push_back(subs[k].get<int>());
    }
    partition = SubsystemPartition(std::move(dims));
    if (partition->total_dim() != dim) {
      throw ParseError("subsystems: dimensions multiply out to " +
                       std::to_string(partition->total_dim()) + ", but dim is " +
                       std::to_string(dim));
    }
  }

  const json& states = require_field(doc, "states", "ensemble file");
  if (!states.is_array() || states.empty()) {
    throw ParseError("states: expected a non-empty array");
  }

  std::vector<Ensemble::Member> members;
  double prob_sum = 0.0;
  for (std::size_t x = 0; x < states.size(); ++x) {
    const std::string context = "states[" + std::to_string(x) + "]";
    const json& state = states[x];
    if (!state.is_object()) {
      throw ParseError(context + ": expected an object");
    }
    const json& prob = require_field(state, "probability", context);
    if (!prob.is_number()) {
      throw ParseError(context + ".probability: expected a number");
    }
    const double p = prob.get<double>();
    if (p < -kInputDrift || p > 1.0 + kInputDrift) {
      throw ParseError(context + ".probability: " + std::to_string(p) +
                       " is outside [0, 1]");
    }
    prob_sum += p;

    const json& kind = require_field(state, "kind", context);
    if (!kind.is_string()) {
      throw ParseError(context + ".kind: expected \"pure\" or \"mixed\"");
    }
    const std::string kind_text = kind.get<std::string>();
    if (kind_text == "pure") {
      members.push_back(
          {p, PureState(parse_amplitudes(require_field(state, "amplitudes", context), dim,
                                         context + ".amplitudes"))});
    } else if (kind_text == "mixed") {
      const json& entries = require_field(state, "matrix", context);
      if (!entries.is_array() || static_cast<int>(entries.size()) != dim * dim) {
        throw ParseError(context + ".matrix: expected " + std::to_string(dim * dim) +
                         " row-major entries");
      }
      Matrix m(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          m(i, j) = parse_complex(entries[i * dim + j],
                                  context + ".matrix[" + std::to_string(i * dim + j) + "]");
        }
      }
      const double herm_gap = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (herm_gap > 1e-8) {
        std::ostringstream os;
        os << context << ".matrix: not hermitian (max deviation " << herm_gap << ")";
        throw ParseError(os.str());
      }
      m = ((m + m.adjoint()) / 2.0).eval();
      const double trace = std::real(m.trace());
      if (std::abs(trace - 1.0) > kInputDrift) {
        std::ostringstream os;
        os << context << ".matrix: trace is " << trace << ", further than " << kInputDrift
           << " from 1";
        throw ParseError(os.str());
      }
      m /= trace;
      try {
        members.push_back({p, DensityOperator(std::move(m))});
      } catch (const QError& err) {
        throw ParseError(context + ".matrix: " + err.what());
      }
    } else {
      throw ParseError(context + ".kind: unknown kind \"" + kind_text + "\"");
    }
  }

  if (std::abs(prob_sum - 1.0) > kInputDrift) {
    std::ostringstream os;
    os << "states: probabilities sum to " << prob_sum << ", further than " << kInputDrift
       << " from 1";
    throw ParseError(os.str());
  }
  for (auto& m : members) {
    m.probability /= prob_sum;
  }

  try {
    return Ensemble(dim, std::move(members), std::move(partition));
  } catch (const QError& err) {
    throw ParseError(std::string("ensemble file: ") + err.what());
  }
}

Ensemble load_ensemble_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open ensemble file: " + path);
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
  return parse_ensemble_json(doc);
}

json ensemble_to_json(const Ensemble& ensemble) {
  json doc;
  doc["format_version"] = "1";
  doc["dim"] = ensemble.dim();
  if (ensemble.partition()) {
    doc["subsystems"] = ensemble.partition()->local_dims;
  }
  json states = json::array();
  for (const auto& m : ensemble.members()) {
    json state;
    state["probability"] = m.probability;
    if (const auto* psi = std::get_if<PureState>(&m.state)) {
      state["kind"] = "pure";
      json amps = json::array();
      for (int i = 0; i < psi->dim(); ++i) {
        amps.push_back(complex_to_json(psi->amplitudes()[i]));
      }
      state["amplitudes"] = std::move(amps);
    } else {
      const auto& rho = std::get<DensityOperator>(m.state);
      state["kind"] = "mixed";
      json entries = json::array();
      for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
          entries.push_back(complex_to_json(rho.matrix()(i, j)));
        }
      }
      state["matrix"] = std::move(entries);
    }
    states.push_back(std::move(state));
  }
  doc["states"] = std::move(states);
  return doc;
}

ExplicitBasisSpec parse_basis_json(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("basis file: expected a JSON object");
  }
  require_version(doc, "basis file");
  const int dim = parse_dim(doc, "basis file");

  const json& vectors = require_field(doc, "vectors", "basis file");
  if (!vectors.is_array() || static_cast<int>(vectors.size()) != dim) {
    throw ParseError("vectors: expected exactly " + std::to_string(dim) + " basis vectors");
  }
  std::vector<PureState> parsed;
  parsed.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    parsed.emplace_back(
        parse_amplitudes(vectors[i], dim, "vectors[" + std::to_string(i) + "]"));
  }

  bool certified = false;
  if (doc.contains("certified")) {
    if (!doc["certified"].is_boolean()) {
      throw ParseError("certified: expected a boolean");
    }
    certified = doc["certified"].get<bool>();
  }
  std::string note;
  if (doc.contains("note")) {
    if (!doc["note"].is_string()) {
      throw ParseError("note: expected a string");
    }
    note = doc["note"].get<std::string>();
  }

  try {
    return ExplicitBasisSpec{MeasurementBasis(std::move(parsed)), certified, std::move(note)};
  } catch (const QError& err) {
    throw ParseError(std::string("vectors: ") + err.what());
  }
}

ExplicitBasisSpec load_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open basis file: " + path);
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
  return parse_basis_json(doc);
}

json basis_to_json(const ExplicitBasisSpec& spec) {
  json doc;
  doc["format_version"] = "1";
  doc["dim"] = spec.basis.dim();
  json vectors = json::array();
  for (int i = 0; i < spec.basis.dim(); ++i) {
    json amps = json::array();
    for (int j = 0; j < spec.basis.dim(); ++j) {
      amps.push_back(complex_to_json(spec.basis.vector(i).amplitudes()[j]));
    }
    vectors.push_back(std::move(amps));
  }
  doc["vectors"] = std::move(vectors);
  doc["certified"] = spec.certified;
  doc["note"] = spec.certificate_note;
  return doc;
}

}  // namespace qensemble
