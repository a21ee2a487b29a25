#pragma once

#include <stdexcept>
#include <string>

namespace veldrift {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a formula is valid (e.g. v >= c).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input value.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Operation applied to a measurement state at the wrong pipeline stage.
class StageError : public Error {
public:
    using Error::Error;
};

/// Numerical step rejected: unstable time step, negative mass, or
/// probability leaking into the grid boundary.
class StepRejected : public Error {
public:
    using Error::Error;
};

}  // namespace veldrift
