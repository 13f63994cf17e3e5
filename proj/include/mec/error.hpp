#pragma once

#include <stdexcept>
#include <string>

namespace mec {

enum class ErrorCode {
  CycleDetected,
  NotExtendable,
  NotCompleted,
  EdgeNotDirected,
  NotApplicable,
  TooLarge,
  EmptyOperatorSet,
  EmptyTrace,
  Parse,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

/// Domain error raised by every library operation. The code is what callers
/// (notably the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mec
