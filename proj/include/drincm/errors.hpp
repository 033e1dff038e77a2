#pragma once

#include <stdexcept>
#include <string>

namespace dcm {

// Every failure raised by the library carries a stable error name, which the
// CLI prints verbatim (e.g. "SplitAtInfinity").
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define DCM_DEFINE_ERROR(Name)                                   \
  class Name : public DomainError {                              \
   public:                                                       \
    explicit Name(const std::string& detail = "")                \
        : DomainError(#Name, detail) {}                          \
  };

// algebra
DCM_DEFINE_ERROR(CompositeP)
DCM_DEFINE_ERROR(ReducibleModulus)
DCM_DEFINE_ERROR(FieldTooLarge)
DCM_DEFINE_ERROR(ZeroArgument)
DCM_DEFINE_ERROR(DivisionByZeroPoly)
DCM_DEFINE_ERROR(ZeroPolynomial)
DCM_DEFINE_ERROR(FieldMismatch)
DCM_DEFINE_ERROR(ParseError)

// series
DCM_DEFINE_ERROR(InvertZeroToPrecision)
DCM_DEFINE_ERROR(RamificationMismatch)
DCM_DEFINE_ERROR(InsufficientPrecision)

// quadorder
DCM_DEFINE_ERROR(NotSquarefree)
DCM_DEFINE_ERROR(SplitAtInfinity)
DCM_DEFINE_ERROR(DegreeZeroDiscriminant)
DCM_DEFINE_ERROR(NotIrreducible)
DCM_DEFINE_ERROR(NotDividing)

// forms / analytic
DCM_DEFINE_ERROR(NotReduced)
DCM_DEFINE_ERROR(DegenerateLattice)
DCM_DEFINE_ERROR(ConsistencyFailure)
DCM_DEFINE_ERROR(DeltaZeroToPrecision)
DCM_DEFINE_ERROR(PrecisionCapExceeded)
DCM_DEFINE_ERROR(PreconditionViolated)

// heights
DCM_DEFINE_ERROR(RoundingFailure)

#undef DCM_DEFINE_ERROR

}  // namespace dcm
