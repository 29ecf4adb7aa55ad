#pragma once

#include <stdexcept>
#include <string>

namespace gafzeros {

// Base of the library's error hierarchy. The two direct subclasses split
// errors by who is at fault: ValidationError means the input was rejected,
// NumericalError means an algorithm failed on an accepted input. The CLI
// maps them to exit codes 2 and 3 respectively.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Covariance sequence is not positive definite (or outside the admissible
// parameter region for the two-parameter family).
class NotPositiveDefinite final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Argument outside the mathematical domain of an operation (radius not in
// (0,1), point outside the open unit disk, invalid model parameter, ...).
class DomainError final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Asymptotic prediction requested for a parameter pair outside the
// admissible region.
class OutsideRegion final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Structurally degenerate input (zero polynomial, empty grid, ...).
class DegenerateInput final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Iteration failed to reach its tolerance within the iteration budget.
class ConvergenceError final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Quadrature failed to stabilize within the node budget.
class NoConvergence final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Spectral factorization failed (odd multiplicity on the unit circle,
// unpaired roots, round-trip residual too large).
class FactorizationError final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Root tracking could not assign roots to branches unambiguously; the
// radius grid must be refined.
class AmbiguousMatching final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A unit-circle zero cluster of odd size was detected where theory requires
// even multiplicity; signals non-positive-definite input that slipped past
// validation.
class OddMultiplicity final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Two theta roots inside the disk are too close for a stable residue
// evaluation. Thrown internally; the residue correction catches it and
// falls back to contour quadrature.
class NearMultipleRoot final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A sampled polynomial has a root on the counting circle (within
// tolerance). Thrown internally; the Monte Carlo driver resamples.
class ZeroOnCircle final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace gafzeros
