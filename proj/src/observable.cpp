#include "weakval/observable.hpp"

#include "weakval/errors.hpp"

namespace weakval {

Observable::Observable(std::string name, CMatrix matrix)
    : name_(std::move(name)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
        throw DimensionMismatchError("observable matrix must be square");
    if (matrix_.rows() == 0 || matrix_.rows() > kMaxDimension)
        throw DimensionMismatchError("dimension must be in [1, 64]");
    if (!matrix_.all_finite()) throw Error("non-finite matrix entry");
    if (!matrix_.is_hermitian(kHermiticityTolerance))
        throw NotHermitianError("not Hermitian");
}

Observable Observable::identity(std::size_t n, std::string name) {
    return Observable(std::move(name), CMatrix::identity(n));
}

Observable Observable::renamed(std::string name) const {
    return Observable(std::move(name), matrix_);
}

Observable operator+(const Observable& a, const Observable& b) {
    return Observable(a.name_ + "+" + b.name_, a.matrix_ + b.matrix_);
}

Observable operator-(const Observable& a, const Observable& b) {
    return Observable(a.name_ + "-" + b.name_, a.matrix_ - b.matrix_);
}

Observable projector_onto(const StateVector& v, std::string name) {
    const std::size_t n = v.dimension();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return Observable(std::move(name), std::move(m));
}

Observable tensor_product(const Observable& a, const Observable& b) {
    const std::size_t na = a.dimension();
    const std::size_t nb = b.dimension();
    CMatrix m(na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    m(i * nb + j, k * nb + l) = a.matrix()(i, k) * b.matrix()(j, l);
    return Observable(a.name() + " x " + b.name(), std::move(m));
}

Complex matrix_element(const StateVector& bra, const Observable& op, const StateVector& ket) {
    require_same_space(bra, ket);
    if (op.dimension() != ket.dimension())
        throw DimensionMismatchError("observable dimension does not match state");
    const std::vector<Complex> v = op.apply(ket.amplitudes());
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(bra[i]) * v[i];
    return acc;
}

Complex expectation(const StateVector& psi, const Observable& op) {
    return matrix_element(psi, op, psi);
}

StateVector collapsed_state(const Observable& projector, const StateVector& psi) {
    if (projector.dimension() != psi.dimension())
        throw DimensionMismatchError("projector dimension does not match state");
    return StateVector(psi.labels(), projector.apply(psi.amplitudes()));
}

} // namespace weakval
