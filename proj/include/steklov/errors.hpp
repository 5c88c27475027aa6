#ifndef STEKLOV_ERRORS_HPP
#define STEKLOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace steklov {

class SteklovError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Fourier radius dips to zero or below somewhere on the check grid.
class NonpositiveRadius : public SteklovError {
public:
    using SteklovError::SteklovError;
};

/// Grids must have an even node count (the log-kernel quadrature requires it).
class OddNodeCount : public SteklovError {
public:
    using SteklovError::SteklovError;
};

/// The QZ backend reported failure.
class EigendecompositionFailure : public SteklovError {
public:
    using SteklovError::SteklovError;
};

/// Fewer valid eigenvalues survived filtering than were requested.
class InsufficientResolution : public SteklovError {
public:
    using SteklovError::SteklovError;
};

/// An eigenfunction trace fed into the shape calculus is not unit-normalized.
class NormalizationViolated : public SteklovError {
public:
    using SteklovError::SteklovError;
};

/// Optimization seed shape is unusable.
class SeedInvalid : public SteklovError {
public:
    using SteklovError::SteklovError;
};

} // namespace steklov

#endif
