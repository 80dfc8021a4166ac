#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nowcast {

enum class ErrorCode {
  MissingColumn,
  BadQuarterLabel,
  IndexGap,
  DuplicateQuarter,
  NonNumericCell,
  BadHeader,
  NonPositiveCpi,
  UnknownColumn,
  BaseOutOfRange,
  NonPositiveValue,
  EmptyColumnSet,
  BoundaryOutOfRange,
  BadScenario,
  RankDeficient,
  ShapeMismatch,
  EmptyInput,
  QOutOfRange,
  NotConverged,
  KOutOfRange,
  BadHyperparameter,
  TooShort,
  FeatureMismatch,
  BadModelFile,
  TooShortForFolds,
  EmptyGrid,
  NonPositiveMse,
  TooFewMembers,
  MemberMismatch,
  LengthMismatch,
  ZeroActualForMape,
  ZeroActual,
  BadConfig,
  BadDgp,
  IoError,
  InvariantViolated,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(std::move(message)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

  /// Same error with a stage/context prefix prepended to the message.
  Error annotated(const std::string& context) const { return Error(code_, context + ": " + message_); }

private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace nowcast
