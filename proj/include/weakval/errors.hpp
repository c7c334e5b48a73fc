#pragma once

#include <stdexcept>

namespace weakval {

/// Base class for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw amplitudes with norm below 1e-14 cannot define a state.
struct ZeroVectorError : Error {
    using Error::Error;
};

/// Operands live in different spaces (size or basis labels differ).
struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

/// Post-selection overlap below the configured floor; the weak value is
/// undefined (divergent) for this pre/post pair.
struct NullPostSelectionError : Error {
    using Error::Error;
};

/// Input to a real-restricted operation carries imaginary parts.
struct ComplexGeometryError : Error {
    using Error::Error;
};

/// Intermediate state orthogonal to the pre-selection.
struct OrthogonalIntermediateError : Error {
    using Error::Error;
};

struct ResolutionTooCoarseError : Error {
    using Error::Error;
};

/// Scenario-document validation failure; message is "<field.path>: <what>".
struct SchemaError : Error {
    using Error::Error;
};

} // namespace weakval
