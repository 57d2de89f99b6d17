#include "nkcp3/error.hpp"

namespace nkcp3 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPoleAtPoint: return "pole_at_point";
    case ErrorKind::kOrderOutOfRange: return "order_out_of_range";
    case ErrorKind::kOrderExhausted: return "order_exhausted";
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kZeroPolynomial: return "zero_polynomial";
    case ErrorKind::kNotAFlag: return "not_a_flag";
    case ErrorKind::kStepTooSmall: return "step_too_small";
    case ErrorKind::kStepTooLarge: return "step_too_large";
    case ErrorKind::kFrameNotOrthonormal: return "frame_not_orthonormal";
    case ErrorKind::kDegenerateWeierstrass: return "degenerate_weierstrass";
    case ErrorKind::kNoHorizontalTangent: return "no_horizontal_tangent";
    case ErrorKind::kZeroOnContour: return "zero_on_contour";
    case ErrorKind::kInsufficientSamples: return "insufficient_samples";
    case ErrorKind::kQuadratureDrift: return "quadrature_drift";
    case ErrorKind::kDegeneratePoint: return "degenerate_point";
    case ErrorKind::kNotConformal: return "not_conformal";
    case ErrorKind::kEmptyGrid: return "empty_grid";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kIo: return "io_error";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t offset, std::string expected)
    : Error(ErrorKind::kParse,
            "at offset " + std::to_string(offset) + ": expected " + expected),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace nkcp3
