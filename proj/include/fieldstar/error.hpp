#pragma once

#include <stdexcept>
#include <string>

namespace fieldstar {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A term cannot be integrated over the requested label (no delta atom in it).
class NonIntegrable : public Error {
public:
    using Error::Error;
};

/// Mixed kernels are rejected by brackets and star products.
class MixedKernel : public Error {
public:
    using Error::Error;
};

class LabelError : public Error {
public:
    using Error::Error;
};

/// A function symbol lacks the information needed to evaluate it at the origin.
class MissingFlag : public Error {
public:
    using Error::Error;
};

/// Density does not vanish at the jet origin.
class ConditionBViolation : public Error {
public:
    using Error::Error;
};

/// Two independent computation routes disagreed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace fieldstar
