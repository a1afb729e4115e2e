#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gspan {

enum class ErrorCode {
  NonAssociative,
  NoIdentity,
  NoInverse,
  MalformedTable,
  GeneratorClosureOverflow,
  CapExceeded,
  NotAnAction,
  ActionsDoNotCommute,
  LeftActionNotFree,
  NotEquivariant,
  GroupMismatch,
  TargetMismatch,
  FeetMismatch,
  NontrivialGroup,
  ShapeMismatch,
  EntryOutOfCarrier,
  NotASemiring,
  UnfactorableSpan,
  InvalidMackeyData,
  ActionIncompatible,
  NotEpi,
  WrongSource,
  PceViolation,
  FreenessFailure,
  CorpusOverflow,
  NotAGroupoid,
  NotAFunctor,
  IngressiveNotFibration,
  AxiomViolation,
  ArityOverflow,
  UnknownCommand,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gspan
