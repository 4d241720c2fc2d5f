#pragma once

#include <stdexcept>
#include <string>

namespace omega_sums {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size limit (sieve bound, memory cap) was exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation (e.g. Re s <= 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An input hits a pole of the formula (x = 1, f(p) = -1, a_p = -1, ...).
class SingularInputError : public Error {
public:
    using Error::Error;
};

/// A structural precondition failed (e.g. n not squarefree).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A function rule could not produce a value at some prime power.
class EvaluationError : public Error {
public:
    using Error::Error;
};

} // namespace omega_sums
