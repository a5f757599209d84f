#pragma once

#include <stdexcept>
#include <string>

namespace tsko {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Invalid user configuration (out-of-range level, bad preset, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or unusable input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Non-finite values appeared during a computation.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace tsko
