#pragma once

#include <string>
#include <vector>

#include "weakval/observable.hpp"
#include "weakval/state_vector.hpp"

namespace weakval {

/// Post-selection state together with its display name.
struct NamedState {
    std::string name;
    StateVector state;
};

struct EngineOptions {
    /// Overlaps |⟨φ|ψ⟩| below this floor make the weak value undefined.
    double overlap_floor = 1e-12;
    /// Orthonormality / completeness tolerance for post bases.
    double basis_tolerance = 1e-10;
    /// Table builders reject incomplete post sets unless this is cleared.
    bool require_complete_basis = true;
};

/// One cell of a weak-value table; undefined when the post-selection
/// overlap is below the floor.
struct WeakValueCell {
    Complex value{0.0, 0.0};
    bool defined = true;
};

/// Weak values of a family of observables over a set of post-selections,
/// with the transition weights Pr(x) = |⟨x|ψ⟩|² and the weighted row
/// averages. Averages are accumulated in the product form ⟨ψ|x⟩⟨x|A|ψ⟩ so
/// zero-overlap columns contribute exactly zero.
struct WeakValueTable {
    std::vector<std::string> post_labels;
    std::vector<double> weights;
    std::vector<std::string> row_names;
    std::vector<std::vector<WeakValueCell>> rows;
    std::vector<Complex> row_averages;
    std::vector<WeakValueCell> column_sums;

    // presentation hints set by the scenario builders
    std::string title;
    bool show_average = true;
    bool show_sum = false;
    bool show_sum_of_squares = false;
    std::vector<std::vector<std::string>> cell_formulas;

    WeakValueCell column_sum_of_squares(std::size_t column) const;
    Complex sum_of_row_averages() const;
    Complex weighted_sum_of_squares_average() const;
};

/// ⟨φ|A|ψ⟩ / ⟨φ|ψ⟩. Throws NullPostSelectionError when the overlap is
/// below the floor. Invariant under rescaling either state by any nonzero
/// complex number.
Complex weak_value(const StateVector& pre, const StateVector& post, const Observable& op,
                   double overlap_floor = 1e-12);

WeakValueTable weak_value_table(const StateVector& pre, const std::vector<NamedState>& posts,
                                const std::vector<Observable>& observables,
                                const EngineOptions& opts = {});

/// Per-post-state residual for a residual check; null-overlap columns are
/// reported as skipped, never failed.
struct ColumnResidual {
    std::string post_label;
    double residual = 0.0;
    bool skipped = false;
};

/// Residual of |Σ_m w(|m⟩⟨m|; x) − 1| for a complete orthonormal projector
/// resolution, per post state x.
std::vector<ColumnResidual> check_consistency_one(const StateVector& pre,
                                                  const std::vector<NamedState>& posts,
                                                  const std::vector<StateVector>& projector_states,
                                                  const EngineOptions& opts = {});

/// Σ_x (h_A(x))* Pr(x) h_B(x) over a complete post basis.
Complex weak_bilinear_sum(const StateVector& pre, const std::vector<NamedState>& posts,
                          const Observable& a, const Observable& b,
                          const EngineOptions& opts = {});

/// |weak_bilinear_sum − ⟨ψ|AB|ψ⟩|.
double check_consistency_two(const StateVector& pre, const std::vector<NamedState>& posts,
                             const Observable& a, const Observable& b,
                             const EngineOptions& opts = {});

/// Σ|h_A(x)|²Pr(x) − (Σ h_A(x)Pr(x))², the second summand squared as a
/// complex number. The imaginary part of the result must vanish for a
/// complete basis and is checked against 1e-10.
double variance_via_weak_values(const StateVector& pre, const std::vector<NamedState>& posts,
                                const Observable& op, const EngineOptions& opts = {});

/// ⟨ψ|a⟩⟨a|B|ψ⟩, the division-free joint form; exactly zero for a ⊥ ψ.
Complex joint_probability(const StateVector& pre, const StateVector& a, const Observable& b);

struct AblResult {
    double modulus_squared = 0.0;      ///< |w(|a⟩⟨a|)|²
    double factual_probability = 0.0;  ///< modulus_squared × |⟨φ|ψ⟩|²
    double two_form_residual = 0.0;    ///< vs Pr(a;ψ)Pr(φ;a)/Pr(φ;ψ)
};

AblResult abl_probability(const StateVector& pre, const StateVector& post,
                          const StateVector& intermediate, double overlap_floor = 1e-12);

/// ⟨ψ|(A−B)²|ψ⟩ computed as ‖(A−B)|ψ⟩‖², hence exactly real and ≥ 0.
double observable_distance(const StateVector& pre, const Observable& a, const Observable& b);

/// The same quantity summed from weak values, Σ_x Pr(x)|h_A(x) − h_B(x)|².
double observable_distance_weak_form(const StateVector& pre, const std::vector<NamedState>& posts,
                                     const Observable& a, const Observable& b,
                                     const EngineOptions& opts = {});

/// |w_A(x) − w_B(x)| per post state; zero everywhere iff A and B are
/// equivalent for the pre-selected state.
std::vector<ColumnResidual> weak_equivalence_residual(const StateVector& pre,
                                                      const std::vector<NamedState>& posts,
                                                      const Observable& a, const Observable& b,
                                                      const EngineOptions& opts = {});

/// Σ Re(h_A(x)) Pr(x), the real-part view of the row average.
double real_part_row_average(const StateVector& pre, const std::vector<NamedState>& posts,
                             const Observable& op, const EngineOptions& opts = {});

/// Throws unless the states form an orthonormal set; with `complete`, the
/// set must also span the space (count equals dimension).
void require_orthonormal(const std::vector<StateVector>& states, std::size_t dimension,
                         double tolerance, bool complete);

} // namespace weakval
