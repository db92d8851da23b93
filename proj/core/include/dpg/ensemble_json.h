#ifndef DPG_ENSEMBLE_JSON_H_
#define DPG_ENSEMBLE_JSON_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "dpg/ensemble.h"

namespace dpg {

// Portable ensemble format:
//
//   {"features": [{"name": ..., "kind": "numeric"|"categorical"}, ...],
//    "classes": ["setosa", ...],
//    "trees": [{"root": 0, "nodes": [
//        {"id": 0, "kind": "split", "feature": 2, "threshold": 2.45,
//         "left": 1, "right": 2},
//        {"id": 1, "kind": "leaf", "class": 0}, ...]}],
//    "metadata": {...}}
//
// Categorical splits carry "values": [codes...] instead of "threshold".

// Structural parse only; throws ParseError on malformed documents.
TreeEnsemble EnsembleFromJson(const Json& doc);
Json EnsembleToJson(const TreeEnsemble& model);

// Parses and validates. Throws ParseError for malformed JSON and SchemaError
// listing every violation otherwise.
TreeEnsemble ParseEnsemble(std::string_view text);
TreeEnsemble LoadEnsemble(const std::filesystem::path& path);

// Two-space indented, trailing newline.
std::string SerializeEnsemble(const TreeEnsemble& model);

}  // namespace dpg

#endif  // DPG_ENSEMBLE_JSON_H_
