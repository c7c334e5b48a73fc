#pragma once

#include <string>
#include <vector>

#include "weakval/complex_matrix.hpp"
#include "weakval/state_vector.hpp"

namespace weakval {

/// Hermitian operator with a display name. Hermiticity is enforced at
/// construction with an entrywise tolerance of 1e-12.
class Observable {
public:
    static constexpr double kHermiticityTolerance = 1e-12;

    Observable(std::string name, CMatrix matrix);

    static Observable identity(std::size_t n, std::string name = "id");

    const std::string& name() const { return name_; }
    const CMatrix& matrix() const { return matrix_; }
    std::size_t dimension() const { return matrix_.rows(); }

    std::vector<Complex> apply(const std::vector<Complex>& v) const { return matrix_.apply(v); }

    Observable renamed(std::string name) const;

    friend Observable operator+(const Observable& a, const Observable& b);
    friend Observable operator-(const Observable& a, const Observable& b);

private:
    std::string name_;
    CMatrix matrix_;
};

/// Rank-1 projector |v⟩⟨v|.
Observable projector_onto(const StateVector& v, std::string name = "P");

Observable tensor_product(const Observable& a, const Observable& b);

/// ⟨bra|A|ket⟩.
Complex matrix_element(const StateVector& bra, const Observable& op, const StateVector& ket);

/// ⟨ψ|A|ψ⟩.
Complex expectation(const StateVector& psi, const Observable& op);

/// P|ψ⟩ renormalized; throws ZeroVectorError when P annihilates ψ.
StateVector collapsed_state(const Observable& projector, const StateVector& psi);

} // namespace weakval
