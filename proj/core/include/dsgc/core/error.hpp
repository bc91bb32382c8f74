#pragma once

#include <stdexcept>
#include <string>

namespace dsgc {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected before any work was done: bad shapes, parameters or data.
/// The command line tool maps this family to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed, inconsistent or missing input data (files, corpora, supports).
class DataError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Labels leave nothing to decompose (one class, or coinciding class means).
class DegenerateLabelsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Nothing to train on (empty train mask).
class TrainingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

namespace detail {

[[noreturn]] inline void throw_shape(const std::string& where, std::size_t lr, std::size_t lc,
                                     std::size_t rr, std::size_t rc) {
    throw ShapeError(where + ": incompatible shapes " + std::to_string(lr) + "x" +
                     std::to_string(lc) + " and " + std::to_string(rr) + "x" + std::to_string(rc));
}

}  // namespace detail
}  // namespace dsgc
