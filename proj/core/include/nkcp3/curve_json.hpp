#pragma once

#include <nlohmann/json.hpp>

#include "nkcp3/curve.hpp"

namespace nkcp3 {

/// Curve file objects:
///   {"kind": "weierstrass", "f": "<expr>", "g": "<expr>"}
///   {"kind": "explicit", "components": ["<expr>", x4]}
///   {"kind": "fiber", "base": [[re, im], x4]}
///   {"kind": "partner", "inner": <curve object>}
nlohmann::json curve_to_json(const CurveExpr& c);

/// Throws InvalidArgument for malformed objects and ParseError for bad expressions.
CurveExpr curve_from_json(const nlohmann::json& j);

}  // namespace nkcp3
