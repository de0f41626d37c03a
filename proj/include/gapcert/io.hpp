#pragma once

#include "gapcert/family.hpp"
#include "gapcert/morse.hpp"

#include "json.hpp"

namespace gapcert {

using Json = nlohmann::json;

/// Problem file: one normed space plus named subspaces.
///   {"dim": 4, "field": "real", "norm": {"p": 2.0, "weights": [...]},
///    "subspaces": {"M": [[col], [col], ...], ...}}
/// Scalar entries are numbers, or [re, im] over the complex field.
/// Subspaces are lists of columns; operator arrays ("gram", "K") are lists
/// of rows.
struct ProblemFile {
  NormedSpace space;
  std::map<std::string, Subspace> subspaces;
};

Json load_json(const std::string& path);

NormedSpace space_from_json(const Json& j);
Json space_to_json(const NormedSpace& X);

ProblemFile problem_from_json(const Json& j);
Json problem_to_json(const ProblemFile& p);

const Subspace& get_subspace(const ProblemFile& p, const std::string& name);

/// Form file: {"subspace": "V", "gram": [[...], ...]} resolved against a
/// problem file.
SymmetricPair form_from_json(const Json& j, const ProblemFile& p);
Json form_to_json(const SymmetricPair& Q, const std::string& subspace_name);

Mat matrix_from_json(const Json& rows, Field field);
Json matrix_to_json(const Mat& A, Field field);

/// Path file: problem-file keys plus {"generator": ..., "steps": n} and
/// either {"tetrad": {"Y1","M","N","Y2"}} or {"pair": {"M","N","K"}}.
PathSpec path_from_json(const Json& j);

Json interval_to_json(const Interval& v);
Json verdict_to_json(const Verdict& v);

/// Serializes with sorted keys and a trailing newline; a "timestamp" field
/// is added at the top level (the only non-deterministic byte).
void write_report(const std::string& path, Json report);

}  // namespace gapcert
