// JSON (de)serialization of ensembles and explicit bases.
//
// Ensemble file layout (format_version "1"):
//   {
//     "format_version": "1",
//     "dim": 4,
//     "subsystems": [2, 2],                  // optional partition
//     "states": [
//       {"probability": 0.5, "kind": "pure",
//        "amplitudes": [[re, im], ...]},     // dim entries
//       {"probability": 0.5, "kind": "mixed",
//        "matrix": [[re, im], ...]}          // dim*dim entries, row-major
//     ]
//   }
//
// Basis file layout (format_version "1"):
//   {
//     "format_version": "1",
//     "dim": 4,
//     "vectors": [[[re, im], ...], ...],     // dim vectors of dim entries
//     "certified": true,                     // optional, default false
//     "note": "why the basis is measurable"  // optional
//   }
//
// Parsing rewrites mild normalization drift (up to 1e-6 in state norms,
// probability sums and traces) so hand-written files with rounded decimals
// load cleanly, and reports everything else as ParseError naming the
// offending field.
#pragma once

#include <string>

#include <json.hpp>

#include "qensemble/basis.hpp"

namespace qensemble {

Ensemble parse_ensemble_json(const nlohmann::json& doc);
Ensemble load_ensemble_file(const std::string& path);
nlohmann::json ensemble_to_json(const Ensemble& ensemble);

ExplicitBasisSpec parse_basis_json(const nlohmann::json& doc);
ExplicitBasisSpec load_basis_file(const std::string& path);
nlohmann::json basis_to_json(const ExplicitBasisSpec& spec);

}  // namespace qensemble
