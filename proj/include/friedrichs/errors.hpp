#pragma once

#include <stdexcept>
#include <string>

namespace friedrichs {

/// Model or discretization parameters that cannot be realized (e.g. a grid too
/// coarse to align every breakpoint of the truncated model).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition that is checked numerically
/// (symmetry, orthonormality, monotonicity).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A result failed a self-check that can only fail through an internal bug.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace friedrichs
