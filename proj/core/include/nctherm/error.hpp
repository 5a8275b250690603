#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nctherm {

enum class Errc {
  InvalidParameter,
  NonPositiveDeformation,
  UnboundedSpectrum,
  UndefinedGuidingCenter,
  DeformationTooLarge,
  GammaPole,
  OutsideClosedForm,  // q >= 3: (3-q)/2 exponent weight is no longer positive
  Overflow,
  NonSummableTail,
  CutoffExplosion,
  QuadratureStall,
  StepUnderflow,
  RegimeViolation,
  DegenerateDenominator,
  SignChange,
  InsufficientSpan,
  AllPointsInvalid,
  InvalidSpec,
  IoFailure,
  ParseError,
  ValidationError,
  DomainRejected,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace nctherm
