#include "gspan/error.hpp"

namespace gspan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAssociative:
      return "NonAssociative";
    case ErrorCode::NoIdentity:
      return "NoIdentity";
    case ErrorCode::NoInverse:
      return "NoInverse";
    case ErrorCode::MalformedTable:
      return "MalformedTable";
    case ErrorCode::GeneratorClosureOverflow:
      return "GeneratorClosureOverflow";
    case ErrorCode::CapExceeded:
      return "CapExceeded";
    case ErrorCode::NotAnAction:
      return "NotAnAction";
    case ErrorCode::ActionsDoNotCommute:
      return "ActionsDoNotCommute";
    case ErrorCode::LeftActionNotFree:
      return "LeftActionNotFree";
    case ErrorCode::NotEquivariant:
      return "NotEquivariant";
    case ErrorCode::GroupMismatch:
      return "GroupMismatch";
    case ErrorCode::TargetMismatch:
      return "TargetMismatch";
    case ErrorCode::FeetMismatch:
      return "FeetMismatch";
    case ErrorCode::NontrivialGroup:
      return "NontrivialGroup";
    case ErrorCode::ShapeMismatch:
      return "ShapeMismatch";
    case ErrorCode::EntryOutOfCarrier:
      return "EntryOutOfCarrier";
    case ErrorCode::NotASemiring:
      return "NotASemiring";
    case ErrorCode::UnfactorableSpan:
      return "UnfactorableSpan";
    case ErrorCode::InvalidMackeyData:
      return "InvalidMackeyData";
    case ErrorCode::ActionIncompatible:
      return "ActionIncompatible";
    case ErrorCode::NotEpi:
      return "NotEpi";
    case ErrorCode::WrongSource:
      return "WrongSource";
    case ErrorCode::PceViolation:
      return "PceViolation";
    case ErrorCode::FreenessFailure:
      return "FreenessFailure";
    case ErrorCode::CorpusOverflow:
      return "CorpusOverflow";
    case ErrorCode::NotAGroupoid:
      return "NotAGroupoid";
    case ErrorCode::NotAFunctor:
      return "NotAFunctor";
    case ErrorCode::IngressiveNotFibration:
      return "IngressiveNotFibration";
    case ErrorCode::AxiomViolation:
      return "AxiomViolation";
    case ErrorCode::ArityOverflow:
      return "ArityOverflow";
    case ErrorCode::UnknownCommand:
      return "UnknownCommand";
    case ErrorCode::MalformedInput:
      return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace gspan
