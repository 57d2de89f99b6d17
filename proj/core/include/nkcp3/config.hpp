#pragma once

namespace nkcp3 {

using Real = double;

/// Global tolerance for approximate equality of algebraic values.
inline constexpr Real kEqualityEps = 1e-12;

/// Jet division by a value with modulus below this raises PoleAtPoint.
inline constexpr Real kPoleEps = 1e-12;

/// Lower bound for derivative scales used to normalize residuals.
inline constexpr Real kDensityFloor = 1e-6;

/// Horizontal-tangent density below which the partner map is undefined.
inline constexpr Real kDegenerateEps = 1e-9;

}  // namespace nkcp3
