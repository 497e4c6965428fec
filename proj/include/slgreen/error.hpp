#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slgreen {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a coefficient expression; offset is a byte index into the source.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Expression evaluated outside its domain (log of non-positive, division by zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Structurally or numerically invalid problem definition.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Singular transmission block (Δ12 = 0 or Δ34 = 0).
class SingularBlockError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Base for failures raised by the numerics rather than the input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string& message, double lambda)
        : NumericalError(message), lambda_(lambda) {}
    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

class InconsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class AtEigenvalueError : public NumericalError {
public:
    AtEigenvalueError(const std::string& message, double nearest)
        : NumericalError(message), nearest_(nearest) {}
    double nearest_eigenvalue() const noexcept { return nearest_; }

private:
    double nearest_;
};

class DegenerateEigenfunctionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OutOfSpanError : public Error {
public:
    using Error::Error;
};

}  // namespace slgreen
