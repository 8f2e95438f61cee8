#pragma once

#include <stdexcept>
#include <string>

namespace opsys {

enum class ErrorCode {
  NonSquare,
  NonHermitian,
  NotPSD,
  DimensionMismatch,
  ZeroInput,
  InvalidExponent,
  InvalidPower,
  FZeroViolation,
  NonFinite,
  Parse,
};

const char* to_string(ErrorCode code);

// Every precondition failure in the library surfaces as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opsys
