#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncx {

enum class ErrorCode {
  UnknownSymbol,
  IncompleteTerm,
  TrailingInput,
  IllegalAtom,
  MetricUnsupported,
  CapacityExceeded,
  OutOfRange,
  SearchBudgetExceeded,
  IoFailure,
  FormatMismatch,
  ChecksumMismatch,
  RangeInsufficient,
  BelowThreshold,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ncx
