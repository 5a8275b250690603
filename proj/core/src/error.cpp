#include "nctherm/error.hpp"

namespace nctherm {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::NonPositiveDeformation: return "NonPositiveDeformation";
    case Errc::UnboundedSpectrum: return "UnboundedSpectrum";
    case Errc::UndefinedGuidingCenter: return "UndefinedGuidingCenter";
    case Errc::DeformationTooLarge: return "DeformationTooLarge";
    case Errc::GammaPole: return "GammaPole";
    case Errc::OutsideClosedForm: return "OutsideClosedForm";
    case Errc::Overflow: return "Overflow";
    case Errc::NonSummableTail: return "NonSummableTail";
    case Errc::CutoffExplosion: return "CutoffExplosion";
    case Errc::QuadratureStall: return "QuadratureStall";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::RegimeViolation: return "RegimeViolation";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::SignChange: return "SignChange";
    case Errc::InsufficientSpan: return "InsufficientSpan";
    case Errc::AllPointsInvalid: return "AllPointsInvalid";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::DomainRejected: return "DomainRejected";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nctherm
