#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace tpsharp {

enum class ErrorCode {
  NonSquare,
  NotExact,
  ShapeMismatch,
  BadWidth,
  BadDomain,
  IndexOutOfRange,
  NotStrictlyIncreasing,
  TooShort,
  TooSmall,
  NonPositiveEntry,
  FactorBelowC,
  InconsistentCorner,
  OrderTooLarge,
  NotBanded,
  BandDegenerate,
  HypothesisUnmet,
  BadEpsilons,
  CNotBelowCk,
  NoConvergence,
  NeedMorePoints,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type. `position` carries a
// 1-based (row, column) cell for entry errors, or (line, column) for parse
// errors.
class Error : public std::runtime_error {
 public:
  using Position = std::pair<std::size_t, std::size_t>;

  Error(ErrorCode code, const std::string& message,
        std::optional<Position> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Position>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<Position> position_;
};

}  // namespace tpsharp
