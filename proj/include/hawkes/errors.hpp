#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Tilt argument left the MGF domain of the mark law.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite-horizon recursion pushed an MGF argument out of domain.
struct TiltTooLarge : DomainError {
    using DomainError::DomainError;
};

struct InvalidOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThetaAboveCritical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThetaAtCritical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EstimatorDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hawkes
