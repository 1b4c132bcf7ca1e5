#pragma once

#include <stdexcept>
#include <string>

namespace quup {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument lies outside the documented domain of an operation
// (non-positive mass, negative decay rate, inverted sweep range, ...).
struct DomainError : Error {
    using Error::Error;
};

// User-supplied data is malformed (unsorted or non-finite samples, ...).
struct DataError : Error {
    using Error::Error;
};

// Path geometry is inconsistent (non-contiguous legs, ...).
struct GeometryError : Error {
    using Error::Error;
};

// A numerical routine failed to meet its tolerance.  Carries the achieved
// error estimate so callers can judge whether the result is still usable.
struct NumericError : Error {
    NumericError(const std::string& what, double achieved)
        : Error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Configuration parsing or validation failure; line is 1-based, 0 = n/a.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what, int line_number = 0)
        : Error(line_number > 0 ? what + " (line " + std::to_string(line_number) + ")" : what),
          line(line_number) {}
    int line;
};

// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

}
