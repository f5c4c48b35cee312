#ifndef LEVEL_SPECTRA_ERROR_HPP
#define LEVEL_SPECTRA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace level_spectra {

enum class ErrorCode {
  CycleDetected,
  MultipleRoots,
  NoRoot,
  IndexOutOfRange,
  InvalidOrder,
  ResourceLimit,
  NotALeaf,
  CannotDeleteRoot,
  ConvergenceFailure,
  TooSmall,
  AmbiguousCluster,
  DegenerateDenominator,
  NoBracket,
  ParseError,
  IndexError,
  NotPositive,
  UnknownCheck,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_ERROR_HPP
