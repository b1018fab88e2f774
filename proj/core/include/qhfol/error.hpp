#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhfol {

/// Stable error codes. The numeric values are part of the CLI contract.
enum class ErrorCode : int {
  ParseError = 10,
  InvalidArgument = 11,
  ZeroPolynomial = 20,
  NonIsolated = 21,
  NotQuasiHomogeneous = 22,
  NotQuasiHomogeneousType = 23,
  NonReducedCurve = 30,
  IrrationalCenter = 31,
  NotAPoint = 32,
  Dicritical = 33,
  NotSingular = 34,
  NotUnique = 35,
  ResolutionCapExceeded = 36,
  SingularFiberHit = 40,
  ToleranceNotMet = 41,
  LeafEscaped = 42,
  IllConditionedFit = 43,
  NonInvertible = 50,
  OrderMismatch = 51,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(what), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  /// Character offset for parse errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace qhfol
