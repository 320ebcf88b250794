#pragma once

#include <stdexcept>
#include <string>

namespace grasslab {

/// Error categories surfaced by the library. Every thrown Error carries one of
/// these, so callers (and the CLI) can report a machine-greppable reason.
enum class ErrorKind {
  CharacteristicTwo,      // GF(2) requested; the algebra needs 1/2
  InvalidField,           // non-prime modulus, modulus too large, ...
  FieldMismatch,          // operands live over different fields
  DimensionMismatch,      // generator counts or vector lengths disagree
  IndexOutOfRange,        // generator / grade index outside [1..n] or [0..n]
  InvalidArgument,
  CapExceeded,            // generator count beyond the configured cap
  WrongArity,             // wrong number of generator images
  ScalarPartPresent,      // generator image with a nonzero constant term
  RelationViolation,      // generator images fail anticommutation
  NotInvertible,
  NonOddElement,          // inner automorphism from an element with even part
  ZeroScalar,
  NotAutomorphism,
  FactorizationFailed,    // the semidirect splitting could not be recomposed
  ClassificationAnomaly,  // no canonical form matched and no witness was found
  BudgetExceeded,         // exhaustive search space beyond the configured bound
  InvalidForm,            // canonical form parameters violate their invariants
  SyntaxError,
  DivisionByZero,
  IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind), detail_(message) {}

  ErrorKind kind() const { return kind_; }

  /// The message without the kind prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace grasslab
