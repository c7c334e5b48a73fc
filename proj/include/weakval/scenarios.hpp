#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "weakval/observable.hpp"
#include "weakval/state_vector.hpp"
#include "weakval/weak_values.hpp"

namespace weakval {

/// Coefficients (η, x, y, z) of the four-path interferometer pre-state
/// η|IpIe⟩ + x|IpOe⟩ + y|OpIe⟩ + z|OpOe⟩, kept normalized.
struct HardyCoefficients {
    Complex eta{0.0, 0.0};
    Complex x{0.0, 0.0};
    Complex y{0.0, 0.0};
    Complex z{0.0, 0.0};

    /// The standard pre-state: η = 0, x = y = z = 1/√3.
    static HardyCoefficients standard();
    /// Rescales an arbitrary nonzero coefficient tuple to unit norm.
    static HardyCoefficients normalized(Complex eta, Complex x, Complex y, Complex z);

    /// Overlaps with the four detector coincidence states, (η∓x∓y±z)/2.
    Complex zeta_dpde() const { return (eta - x - y + z) / 2.0; }
    Complex zeta_dpbe() const { return (eta + x - y - z) / 2.0; }
    Complex zeta_bpde() const { return (eta - x + y - z) / 2.0; }
    Complex zeta_bpbe() const { return (eta + x + y + z) / 2.0; }
};

struct SpinParams {
    double alpha = 0.0;
    double beta = 0.0;

    static SpinParams normalized(double alpha, double beta);
    /// α = β = 1/√2, the +x eigenstate.
    static SpinParams x_plus();
};

struct CheckSpec {
    std::string type;      ///< consistency1|consistency2|born|variance|abl|equivalence
    std::string a, b;      ///< observable names, equivalence only
};

/// Named observable plus an optional rank-1 serialization hint.
struct ScenarioObservable {
    Observable op;
    std::optional<StateVector> projector_state;
};

/// A complete pre/post/observable setting: one labeled space, one
/// pre-selection, an ordered registry of post-selections and observables,
/// and the checks a document of this scenario should run.
struct Scenario {
    std::vector<std::string> labels;
    StateVector pre;
    std::vector<NamedState> posts;
    std::vector<ScenarioObservable> observables;
    std::vector<CheckSpec> checks;
    double tolerance = 1e-10;

    const Observable& find_observable(const std::string& name) const;
    std::vector<Observable> observables_named(const std::vector<std::string>& names) const;
};

/// Crossed two-particle interferometer on {IpIe, IpOe, OpIe, OpOe} with the
/// bright/dark detector basis B = (I+O)/√2, D = (I−O)/√2 per particle and
/// the full projector registry used by the standard tables.
Scenario build_hardy(const HardyCoefficients& coeffs = HardyCoefficients::standard());

enum class HardyTableVariant { noncommuting, cancellation, orthogonal };

/// The three fixed tables of the standard pre-state.
WeakValueTable hardy_table(HardyTableVariant variant);

/// Weak values of the eight path projectors for arbitrary coefficients,
/// with per-cell formula strings; columns with ζ = 0 are marked undefined.
WeakValueTable hardy_general_table(const HardyCoefficients& coeffs);

/// Solves the four counter-factual equivalence constraints for the
/// pre-state. Route (a) zeroes the expectation distances, route (b) zeroes
/// the weak-value differences at the DpDe post-selection; both reduce to
/// η = 0, x = y = z and the normalized real representative is returned.
HardyCoefficients derive_hardy_prestate();

/// Residuals of the four constraints, one number per named pair.
struct HardyConstraintResiduals {
    double out_positron = 0.0;  ///< P[Op(Ie+Oe)] vs P[Op x id]
    double out_electron = 0.0;  ///< P[(Ip+Op)Oe] vs P[id x Oe]
    double in_positron = 0.0;   ///< P[IpOe] vs P[Ip x id]
    double in_electron = 0.0;   ///< P[OpIe] vs P[id x Ie]

    double max() const;
};

/// Route (a): expectation form ⟨ψ|(A−B)²|ψ⟩ for the four pairs.
HardyConstraintResiduals hardy_expectation_residuals(const HardyCoefficients& coeffs);

/// Route (b): |w_A − w_B| at the DpDe post-selection for the four pairs.
HardyConstraintResiduals hardy_weak_residuals(const HardyCoefficients& coeffs);

/// Detector probabilities of the standard pre-state conditioned on a
/// projective intermediate measurement of the positron path, by the
/// sequential Born rule and by the squared-weak-value reconstruction.
struct HardyFactualProbabilities {
    std::array<std::string, 4> detector_labels;
    std::array<double, 4> born_outer;  ///< positron found on the outer path
    std::array<double, 4> abl_outer;
    std::array<double, 4> born_inner;  ///< positron found on the inner path
    std::array<double, 4> abl_inner;
    double dpde_unconditional = 0.0;
};

HardyFactualProbabilities hardy_factual_probabilities();

enum class SpinBasis { computational, y_basis };

/// Two-level scenario with pre-state α|0⟩ + β|1⟩ and the Pauli registry
/// σ_x, σ_y, σ_z, σ_x+σ_y and P_± = (1 ± σ_x)/2.
Scenario build_spin(const SpinParams& params, SpinBasis basis);

enum class SpinTableVariant { pauli_y, nonorthogonal, bloch, projector };

/// pauli_y and nonorthogonal use the y post basis; bloch and projector use
/// the computational basis.
WeakValueTable spin_table(SpinTableVariant variant, const SpinParams& params);

} // namespace weakval
