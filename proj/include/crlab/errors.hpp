#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define CRLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
  public:                                 \
    using Error::Error;                   \
  };

CRLAB_DEFINE_ERROR(SouthPoleError)
CRLAB_DEFINE_ERROR(NonPositiveDelta)
CRLAB_DEFINE_ERROR(ResolutionTooLow)
CRLAB_DEFINE_ERROR(QuadratureInsufficient)
CRLAB_DEFINE_ERROR(CutoffExceeded)
CRLAB_DEFINE_ERROR(OrderOutOfRange)
CRLAB_DEFINE_ERROR(HomogeneityViolation)
CRLAB_DEFINE_ERROR(NegativeDensity)
CRLAB_DEFINE_ERROR(NoConvergence)
CRLAB_DEFINE_ERROR(NotBalanced)
CRLAB_DEFINE_ERROR(Infeasible)
CRLAB_DEFINE_ERROR(ZeroFunction)
CRLAB_DEFINE_ERROR(ConfigError)
CRLAB_DEFINE_ERROR(SuiteFailure)
CRLAB_DEFINE_ERROR(InvalidArgument)

#undef CRLAB_DEFINE_ERROR

}  // namespace crlab
