#pragma once

#include <cstddef>

#include "weakval/observable.hpp"
#include "weakval/spectral.hpp"
#include "weakval/state_vector.hpp"

namespace weakval {

/// Post-selection angles ξ at or beyond this ceiling put cos ξ too close to
/// zero; the weak value diverges and the operations refuse to evaluate.
inline constexpr double kXiCeiling = 1.5707963267948966 - 1e-3;

enum class Objective { minimize, maximize };
enum class PlanarBranch { plus, minus };
enum class Strangeness { within, above_max, below_min };

struct PlanarResult {
    StateVector phi;
    double weak_value = 0.0;
    double theta_n = 0.0;  ///< angle between |n⟩ and |ψ⟩, in (0, π/2)
};

/// Post-selection in the ψ-n plane on the cone ⟨φ|ψ⟩ = cos ξ. The minus
/// branch realizes w = cos(θ_n + ξ) cos θ_n / cos ξ, which is the most
/// negative planar choice and is negative exactly when θ_n + ξ is obtuse;
/// the plus branch gives cos(θ_n − ξ) cos θ_n / cos ξ. Real-restricted:
/// complex inputs are rejected.
PlanarResult planar_postselection(const StateVector& pre, const StateVector& n, double xi,
                                  PlanarBranch branch);

struct StrangenessReport {
    double value = 0.0;
    double spectrum_min = 0.0;
    double spectrum_max = 0.0;
    Strangeness classification = Strangeness::within;
};

/// Locates a real weak value relative to the eigenvalue range, with a
/// 1e-10 inclusive margin at both ends.
StrangenessReport classify_strangeness(double value, const Spectrum& spectrum);

struct OptimalPostSelection {
    StateVector phi;
    double weak_value = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double stationarity_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Extremal weak value of A over the cone ⟨φ|ψ⟩ = cos ξ, by damped
/// fixed-point iteration on the Lagrange stationarity system. Both seed
/// branches are tried and the better stationary point per the objective is
/// returned. Falls back to the grid oracle's best point (converged=false)
/// if the iteration does not settle within 1000 steps.
OptimalPostSelection solve_optimal_postselection(const StateVector& pre, const Observable& op,
                                                 double xi, Objective objective);

struct GridExtremum {
    double value = 0.0;
    StateVector phi;
};

/// Exhaustive sweep of real unit vectors on the cone, parameterized by
/// hyperspherical angles in an orthonormal frame built from ψ and the
/// eigenvectors of A. Deterministic for a fixed resolution; ties are broken
/// toward the lexicographically first angle tuple. Requires N ≤ 8 and at
/// least 8 points per angle.
GridExtremum grid_oracle_extremal(const StateVector& pre, const Observable& op, double xi,
                                  std::size_t resolution, Objective objective);

} // namespace weakval
