#pragma once

#include <string>
#include <vector>

#include "weakval/complex_matrix.hpp"

namespace weakval {

/// Maximum Hilbert-space dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxDimension = 64;

/// Pure state over a labeled orthonormal basis. Construction divides by the
/// input norm, so a StateVector is always unit within 1e-12; a zero or
/// non-finite input is rejected. Labels are fixed per scenario and every
/// binary operation requires identical label lists.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<Complex> raw_amplitudes);

    std::size_t dimension() const { return amps_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

private:
    std::vector<std::string> labels_;
    std::vector<Complex> amps_;
};

StateVector make_state(std::vector<std::string> labels, std::vector<Complex> raw_amplitudes);

/// Basis vector for one label of the given label list.
StateVector basis_state(const std::vector<std::string>& labels, std::size_t index);

/// ⟨bra|ket⟩, conjugate-linear in the bra.
Complex inner_product(const StateVector& bra, const StateVector& ket);

/// Amplitude-wise product state; labels are concatenated pairwise.
StateVector tensor_product(const StateVector& a, const StateVector& b);

void require_same_space(const StateVector& a, const StateVector& b);

} // namespace weakval
