#include "weakval/state_vector.hpp"

#include <cmath>
#include <set>

#include "weakval/errors.hpp"

namespace weakval {

StateVector::StateVector(std::vector<std::string> labels, std::vector<Complex> raw_amplitudes)
    : labels_(std::move(labels)), amps_(std::move(raw_amplitudes)) {
    if (labels_.size() != amps_.size())
        throw DimensionMismatchError("label count does not match amplitude count");
    if (amps_.empty() || amps_.size() > kMaxDimension)
        throw DimensionMismatchError("dimension must be in [1, 64]");

    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw Error("basis labels must be unique");

    double norm_sq = 0.0;
    for (const Complex& z : amps_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error("non-finite amplitude");
        norm_sq += std::norm(z);
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-14) throw ZeroVectorError("zero vector cannot be normalized");
    for (Complex& z : amps_) z /= norm;
}

StateVector make_state(std::vector<std::string> labels, std::vector<Complex> raw_amplitudes) {
    return StateVector(std::move(labels), std::move(raw_amplitudes));
}

StateVector basis_state(const std::vector<std::string>& labels, std::size_t index) {
    std::vector<Complex> amps(labels.size(), Complex{0.0, 0.0});
    amps.at(index) = Complex{1.0, 0.0};
    return StateVector(labels, std::move(amps));
}

void require_same_space(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels())
        throw DimensionMismatchError("states live in different labeled spaces");
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    require_same_space(bra, ket);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dimension(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    std::vector<std::string> labels;
    labels.reserve(a.dimension() * b.dimension());
    std::vector<Complex> amps;
    amps.reserve(a.dimension() * b.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            labels.push_back(a.labels()[i] + b.labels()[j]);
            amps.push_back(a[i] * b[j]);
        }
    return StateVector(std::move(labels), std::move(amps));
}

} // namespace weakval
