#include "weakval/complex_matrix.hpp"

#include <cmath>

#include "weakval/errors.hpp"

namespace weakval {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) >= tol) return false;
    return true;
}

bool CMatrix::all_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
    if (v.size() != cols_) throw DimensionMismatchError("matrix-vector size mismatch");
    std::vector<Complex> out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

static void require_same_shape(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("matrix shape mismatch");
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b);
    CMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
    return m;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b);
    CMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("matrix product shape mismatch");
    CMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = s * a.data_[i];
    return m;
}

} // namespace weakval
