#pragma once

#include <string>
#include <vector>

#include "weakval/observable.hpp"
#include "weakval/state_vector.hpp"

namespace weakval {

/// Eigen-decomposition of a Hermitian observable: eigenvalues ascending,
/// eigenvectors orthonormal and matched by index.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<StateVector> eigenvectors;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

/// Cyclic complex Jacobi with a fixed sweep order, so eigenvector signs are
/// reproducible run to run. Phase convention: the first component of each
/// eigenvector above 1e-8 in magnitude is made real positive. Degenerate
/// eigenspaces (gap below 1e-9) are re-orthonormalized by ordered
/// Gram-Schmidt over the computed vectors; within such a space the basis is
/// not unique and callers must not rely on individual vectors.
Spectrum spectral_decomposition(const Observable& a, const std::vector<std::string>& labels);

/// Same, with canonical labels "0", "1", ...
Spectrum spectral_decomposition(const Observable& a);

} // namespace weakval
