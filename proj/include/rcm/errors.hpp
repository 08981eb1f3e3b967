#pragma once

#include <stdexcept>
#include <string>

namespace rcm {

/// Base class for every failure raised by the library. `kind()` is the
/// stable machine-readable tag the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define RCM_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

// Input errors.
RCM_DECLARE_ERROR(SphericalSpec);
RCM_DECLARE_ERROR(DegenerateSpec);
RCM_DECLARE_ERROR(DomainError);
RCM_DECLARE_ERROR(Inapplicable);
RCM_DECLARE_ERROR(BadSpin);

// Patch geometry errors.
RCM_DECLARE_ERROR(NoFaces);
RCM_DECLARE_ERROR(TruncatedBall);
RCM_DECLARE_ERROR(FrontierVertex);
RCM_DECLARE_ERROR(FrontierContact);
RCM_DECLARE_ERROR(EmptyPatch);
RCM_DECLARE_ERROR(NoInternalEdges);

// Computation limits and quality failures.
RCM_DECLARE_ERROR(BudgetExceeded);
RCM_DECLARE_ERROR(NoCoalescence);
RCM_DECLARE_ERROR(DominationViolated);

#undef RCM_DECLARE_ERROR

}  // namespace rcm
