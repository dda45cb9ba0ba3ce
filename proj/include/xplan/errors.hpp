#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xplan {

/// Malformed user input: bad syntax, failed validation, invalid configuration.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configurable resource cap (actions, state-stage entries, search nodes) was exceeded.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::string what_cap, std::uint64_t measured, std::uint64_t cap)
        : std::runtime_error(what_cap + " cap exceeded: " + std::to_string(measured) +
                             " > " + std::to_string(cap)),
          measured_(measured),
          cap_(cap) {}

    std::uint64_t measured() const { return measured_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t measured_;
    std::uint64_t cap_;
};

/// Runtime failure while evaluating a ground expression (division by zero,
/// probability outside [0,1], unnormalized Discrete).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A policy was asked for an action at a state it does not cover.
class PolicyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace xplan
