#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wallrig {

enum class ErrorCode {
  IdentityLoop,
  DuplicateParallelGain,
  GainOutsideGroup,
  BadVertexIndex,
  DisconnectedWalk,
  EmptySubset,
  TooLarge,
  SizeMismatch,
  MissingEdge,
  ReflectionRequired,
  NotTight,
  NoReductionFound,
  InvalidBase,
  Exhausted,
  ParseError,
  InvalidArgument,
  InternalError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wallrig
