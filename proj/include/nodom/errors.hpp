#pragma once

#include <stdexcept>
#include <string>

namespace nodom {

/// Base of every error thrown by the library. `kind()` is a stable
/// machine-readable tag; the CLI copies it into its error objects.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define NODOM_DEFINE_ERROR(Name, tag)                          \
  class Name : public Error {                                  \
   public:                                                     \
    using Error::Error;                                        \
    const char* kind() const noexcept override { return tag; } \
  };

// Argument outside the mathematical domain of an operation.
NODOM_DEFINE_ERROR(DomainError, "domain")
// Root bracket without a sign change.
NODOM_DEFINE_ERROR(BracketError, "bracket")
// Non-finite value produced during an iteration.
NODOM_DEFINE_ERROR(NumericError, "numeric")
// Overlapping domains or marked point outside its domain.
NODOM_DEFINE_ERROR(ConfigurationError, "configuration")
NODOM_DEFINE_ERROR(SamplingError, "sampling")
NODOM_DEFINE_ERROR(GeometryError, "geometry")
NODOM_DEFINE_ERROR(NonConvergenceError, "non_convergence")
NODOM_DEFINE_ERROR(PoleError, "pole")
// Critical-graph assembly failed (open trajectory, unmatched edge, missing face).
NODOM_DEFINE_ERROR(StructureError, "structure")
NODOM_DEFINE_ERROR(InternalError, "internal")

#undef NODOM_DEFINE_ERROR

}  // namespace nodom
