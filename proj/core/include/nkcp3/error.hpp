#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nkcp3 {

enum class ErrorKind {
  kPoleAtPoint,
  kOrderOutOfRange,
  kOrderExhausted,
  kParse,
  kZeroPolynomial,
  kNotAFlag,
  kStepTooSmall,
  kStepTooLarge,
  kFrameNotOrthonormal,
  kDegenerateWeierstrass,
  kNoHorizontalTangent,
  kZeroOnContour,
  kInsufficientSamples,
  kQuadratureDrift,
  kDegeneratePoint,
  kNotConformal,
  kEmptyGrid,
  kInvalidArgument,
  kIo,
};

/// Stable snake_case name, used in machine-readable error objects.
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Expression syntax error; `offset` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace nkcp3
