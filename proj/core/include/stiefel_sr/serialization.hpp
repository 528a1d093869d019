#pragma once

// JSON encoding of points and velocities:
//
//   {"n": 4, "k": 2, "mode": "complex", "re": [[...], ...], "im": [[...], ...]}
//
// `re` and `im` hold the row-major entries of the n x k columns (Stiefel), the
// n x n projector (Grassmann) or the embedded n x n tangent block (velocity).
// Doubles are written in shortest round-trip form, so decode(encode(x)) is
// bit-identical to x.

#include <nlohmann/json.hpp>

#include "stiefel_sr/homspace.hpp"

namespace stiefel_sr {

nlohmann::json to_json(const StiefelPoint& p);
nlohmann::json to_json(const GrassmannPoint& p);
nlohmann::json to_json(const BlockVelocity& v);

/// Each decoder validates the schema (FormatError) and then the type's
/// invariants (InvariantViolation).
StiefelPoint stiefel_point_from_json(const nlohmann::json& j);
GrassmannPoint grassmann_point_from_json(const nlohmann::json& j);
BlockVelocity block_velocity_from_json(const nlohmann::json& j);

/// {"re": [[...]], "im": [[...]]} for an arbitrary matrix.
nlohmann::json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace stiefel_sr
