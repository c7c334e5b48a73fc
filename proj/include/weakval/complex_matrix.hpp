#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace weakval {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Desk scale only: dimensions are capped
/// at 64 by the types that wrap it.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMatrix adjoint() const;
    bool is_hermitian(double tol) const;
    bool all_finite() const;
    double max_abs() const;

    /// Matrix-vector product M v.
    std::vector<Complex> apply(const std::vector<Complex>& v) const;

    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(Complex s, const CMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

} // namespace weakval
