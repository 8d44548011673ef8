#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wulffkit {

enum class Errc {
  DegenerateInput,
  UnboundedBody,
  OriginNotInterior,
  AlignmentError,
  GenerationFailed,
  NotNormalized,
  NotIsotropic,
  HypothesisViolated,
  DisplacementNotZero,
  NotEven,
  SolverFailure,
  SingularM,
  NotInJohnPosition,
  CentroidNotAtOrigin,
  DomainError,
  SchemaError,
  InvalidArgument,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wulffkit
