#pragma once

#include <stdexcept>
#include <string>

namespace vcdlab {

/// Malformed configuration or a violated precondition on user-supplied input.
class SchemaError : public std::invalid_argument {
public:
    explicit SchemaError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured enumeration cap (set size, dimension, trace count) was exceeded.
class CapExceeded : public std::length_error {
public:
    explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                                ", got " + std::to_string(got)) {}
};

} // namespace vcdlab

namespace vcdlab {

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vcdlab
