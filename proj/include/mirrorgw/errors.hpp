#pragma once

#include <stdexcept>
#include <string>

namespace mirrorgw {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MIRRORGW_DEFINE_ERROR(name)                                  \
  class name : public Error {                                        \
   public:                                                           \
    explicit name(const std::string& what) : Error(#name ": " + what) {} \
  }

MIRRORGW_DEFINE_ERROR(DivisionByNonUnit);
MIRRORGW_DEFINE_ERROR(PreconditionViolated);
MIRRORGW_DEFINE_ERROR(NotHolomorphicAtZero);
MIRRORGW_DEFINE_ERROR(NonUnitEvaluation);
MIRRORGW_DEFINE_ERROR(SingularEvaluation);
MIRRORGW_DEFINE_ERROR(HolomorphyViolation);
MIRRORGW_DEFINE_ERROR(NotFano);
MIRRORGW_DEFINE_ERROR(ObstructionNonzero);
MIRRORGW_DEFINE_ERROR(IdentityViolation);
MIRRORGW_DEFINE_ERROR(HypothesisViolated);
MIRRORGW_DEFINE_ERROR(InvalidGeometry);
MIRRORGW_DEFINE_ERROR(PrecisionExceeded);

#undef MIRRORGW_DEFINE_ERROR

}  // namespace mirrorgw
