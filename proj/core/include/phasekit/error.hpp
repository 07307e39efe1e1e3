#ifndef PHASEKIT_ERROR_HPP
#define PHASEKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace phasekit {

enum class ErrorCode {
  DegenerateForm,
  DegenerateHessian,
  DegenerateFP,
  DegenerateSlice,
  DegenerateRestriction,
  TooLarge,
  MissingTensor,
  Disconnected,
  SpaceMismatch,
  UnknownGenerator,
  NotGaugeInvariant,
  BadStructureConstants,
  CMEViolation,
  SplitNotSymplectic,
  NotTrivalent,
  HasLeaves,
  NoConvergence,
  NonConvergent,
  InsufficientSamples,
  InvalidArgument,
  Schema,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a module-level diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phasekit

#endif  // PHASEKIT_ERROR_HPP
