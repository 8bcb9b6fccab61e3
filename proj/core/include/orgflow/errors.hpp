#pragma once

#include <stdexcept>

namespace orgflow {

/// Input data violates a structural invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration is infeasible or inconsistent.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace orgflow
