#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtomo {

// Machine-readable failure categories. The string form (to_string) is what the
// CLI embeds in reports.
enum class ErrorCode {
  UnboundedPolytope,
  EmptyPolytope,
  DegeneratePolytope,
  PieceCountTooLarge,
  DimensionError,
  NonMonotoneInterval,
  DiscontinuousSamplePoint,
  NonConvergence,
  DegenerateWeights,
  TooManyDirections,
  EpsilonTooLarge,
  SuperadditivityViolation,
  ParseError,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace gtomo
