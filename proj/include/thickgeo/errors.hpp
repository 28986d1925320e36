#pragma once

#include <stdexcept>
#include <string>

namespace thickgeo {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (dimension mismatch, s outside [0,1], bad file).
class InputError : public Error {
public:
    using Error::Error;
};

/// Bush partitions that overlap, leave gaps or reference missing indices.
class StructuralError : public InputError {
public:
    using InputError::InputError;
};

/// A child index that is not in the requested partition block.
class IndexError : public InputError {
public:
    using InputError::InputError;
};

/// A breakpoint that cannot join two pieces into one geodesic.
class PastingError : public InputError {
public:
    using InputError::InputError;
};

/// Depth or combinatorial budget exhausted.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Bush too shallow for the requested construction step.
class DepthError : public BudgetError {
public:
    using BudgetError::BudgetError;
};

/// Iterative solver failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace thickgeo
