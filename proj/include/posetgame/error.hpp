#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posetgame {

enum class Errc {
  DuplicateName,
  UnknownName,
  CycleDetected,
  UnknownElement,
  DeadElement,
  NotAnIdeal,
  PosetTooLarge,
  BadParameter,
  ParseError,
  LabelNotInTarget,
  PartialLabeling,
  AlphaNotMaximal,
  FactorNotUpSet,
  InconsistentExternalRelations,
  ResultNotCompressing,
  HypothesesNotMet,
  InternalInconsistency,
  TargetMismatch,
  PosetTooLargeForSearch,
  InadmissibleB,
  MissingFixture,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::UnknownName: return "UnknownName";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::DeadElement: return "DeadElement";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::PosetTooLarge: return "PosetTooLarge";
    case Errc::BadParameter: return "BadParameter";
    case Errc::ParseError: return "ParseError";
    case Errc::LabelNotInTarget: return "LabelNotInTarget";
    case Errc::PartialLabeling: return "PartialLabeling";
    case Errc::AlphaNotMaximal: return "AlphaNotMaximal";
    case Errc::FactorNotUpSet: return "FactorNotUpSet";
    case Errc::InconsistentExternalRelations: return "InconsistentExternalRelations";
    case Errc::ResultNotCompressing: return "ResultNotCompressing";
    case Errc::HypothesesNotMet: return "HypothesesNotMet";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::PosetTooLargeForSearch: return "PosetTooLargeForSearch";
    case Errc::InadmissibleB: return "InadmissibleB";
    case Errc::MissingFixture: return "MissingFixture";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace posetgame
