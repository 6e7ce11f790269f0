#ifndef GAUSSDENSE_ERROR_HPP
#define GAUSSDENSE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gaussdense {

// Numeric values are part of the C ABI (see gaussdense.h); append only.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NegativeWeight = 2,
  OutOfDomain = 3,
  ZeroWeightSample = 4,
  EmptyCurve = 5,
  NonPowerOfTwo = 6,
  ZeroSignal = 7,
  GridMismatch = 8,
  EmptyFamily = 9,
  InfiniteBound = 10,
  MissingMmc = 11,
  OffGridShift = 12,
  SingularGram = 13,
  StagnatedPursuit = 14,
  NotInSpace = 15,
  ConfigError = 16,
  ValidationError = 17,
  NonFiniteWeight = 18,
  AtomOutOfDomain = 19,
  IoError = 20,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gaussdense

#endif  // GAUSSDENSE_ERROR_HPP
