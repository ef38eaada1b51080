#pragma once

#include <stdexcept>
#include <string>

namespace hankelet {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Inadmissible wavelet parameters.
struct ConstructionError : DomainError {
    using DomainError::DomainError;
};

// A theorem hypothesis does not hold for the given inputs.
struct PreconditionError : DomainError {
    using DomainError::DomainError;
};

// Caller mistakes: mismatched grids, malformed configs.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite samples or other numerical breakdown.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An integral whose integrand does not decay at the ends of its range.
struct DivergenceError : ComputationError {
    using ComputationError::ComputationError;
};

// A cross-validation oracle failed to converge.
struct OracleError : ComputationError {
    using ComputationError::ComputationError;
};

}  // namespace hankelet
