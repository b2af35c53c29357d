#pragma once

#include <stdexcept>
#include <string>

namespace cadence {

// Error taxonomy shared by the whole library. The CLI maps these to
// distinct exit codes (domain/config -> 2, format -> 3, numeric -> 4,
// io -> 5), so new error sites should pick the class that matches the
// failure, not the module it happens in.

/// Invalid argument or value outside a documented precondition.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration (missing keys, bad values, absent inputs).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file or stream violates one of the documented formats.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values or numerically impossible requests.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure to read or write an underlying stream or file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid polygon or other geometric input.
class GeometryError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace cadence
