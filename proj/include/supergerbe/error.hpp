#pragma once

#include <stdexcept>
#include <string>

namespace supergerbe {

enum class ErrorKind {
  UnknownGenerator,
  NonTerminatingReduction,
  NonConfluentRelations,
  DerivationMismatch,
  NotAUnit,
  GeneratorMismatch,
  NonNilpotentArgument,
  ParityMismatch,
  RelationViolation,
  MissingComponent,
  NotACocycle,
  SubstitutionFailure,
  NotClosed,
  NonPolynomialBody,
  NotIntegral,
  NotDescended,
  CoverMismatch,
  OddParity,
  ObstructionNonzero,
  UnsupportedBodyData,
  SoulContamination,
  NotPureSoul,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace supergerbe
