#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct NotInvariantError : Error {
    using Error::Error;
};
struct PoleError : Error {
    using Error::Error;
};
struct PoleCollisionError : Error {
    using Error::Error;
};
struct DivergenceError : Error {
    using Error::Error;
};
struct SingularStepError : Error {
    using Error::Error;
};
struct DegenerateError : Error {
    using Error::Error;
};
struct NonGenericParameterError : Error {
    using Error::Error;
};
struct StarViolationError : Error {
    using Error::Error;
};
struct IsomorphismFailureError : Error {
    using Error::Error;
};

}  // namespace qmc
