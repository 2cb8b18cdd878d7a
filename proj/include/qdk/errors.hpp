#pragma once

#include <stdexcept>
#include <string>

namespace qdk {

/// Shape or subsystem-dimension mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input violates the defining constraints of its type
/// (non-Hermitian, negative, wrong trace, incomplete channel, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A state file or parameter string could not be parsed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown named state, demo, suite or scan family.
class UnknownNameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Results that contradict each other beyond numerical slack, e.g. a
/// discord below -1e-6. Indicates an optimizer failure.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qdk
