#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elastomap {

enum class ErrorCode {
  DimensionMismatch,
  UnsupportedDimension,
  ZeroMacroStrain,
  MixedMacroStrain,
  ZeroFrequency,
  NonPositiveModulus,
  NotConverged,
  InvalidContrast,
  IncompleteBasis,
  GridMismatch,
  BadMagic,
  TruncatedPayload,
  UnsupportedVersion,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace elastomap
