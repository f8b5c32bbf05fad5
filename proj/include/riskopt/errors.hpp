#ifndef RISKOPT_ERRORS_HPP
#define RISKOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace riskopt {

enum class ErrorKind {
  // data invariants
  NegativeProbability,
  ProbabilityMassMismatch,
  NonFiniteValue,
  InvalidLevel,
  NegativeScale,
  NegativeArgument,
  ParameterOutOfRange,
  NotNonnegativeLoss,
  InfeasibleMass,
  TooLarge,
  EmptyMenu,
  PrecedenceNotVerified,
  NotConcave,
  NotAViolation,
  // input syntax / file formats
  MalformedInput,
  // solver refusals
  NonConvexMeasure,
  UnsupportedFamily,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace riskopt

#endif  // RISKOPT_ERRORS_HPP
