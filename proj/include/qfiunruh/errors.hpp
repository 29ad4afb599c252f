// errors.hpp: exception types raised by the qfiunruh library

#pragma once

#include <stdexcept>
#include <string>

namespace qfiunruh {

/// Base class; every library error derives from this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (negative a, pole of coth, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bloch vector longer than one.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// Linear system too close to singular (SLD of a near-pure state).
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// Adaptive integrator could not make progress.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Configuration that violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed grid or user configuration.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace qfiunruh
