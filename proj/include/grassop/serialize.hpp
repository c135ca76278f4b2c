#pragma once

#include <string>

#include <json.hpp>

#include "grassop/connectivity.hpp"

namespace grassop {

using Json = nlohmann::json;

// {"sigma": [...], "d": [...], "N": n, "frames": [[[re, im], ...], ...]}
// with each frame stored column-major. Doubles are printed in shortest
// round-trip form.
Json operator_to_json(const SpectralOperator& a);
std::string serialize_operator(const SpectralOperator& a);

// Throws ValidationError (schema, Sum d != N, non-orthonormal or
// non-orthogonal frames, invalid signature).
SpectralOperator operator_from_json(const Json& doc, Tolerance tol = {});
// Throws ParseError for malformed JSON, otherwise as operator_from_json.
SpectralOperator deserialize_operator(const std::string& text, Tolerance tol = {});

// Types are written 1-based.
Json path_to_json(const OperatorPath& path);
Json verdict_to_json(const AdjacencyVerdict& verdict);

}  // namespace grassop
