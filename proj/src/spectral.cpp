#include "weakval/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

double max_off_diagonal(const CMatrix& h) {
    double m = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i + 1; j < h.cols(); ++j) m = std::max(m, std::abs(h(i, j)));
    return m;
}

// One complex Givens rotation zeroing h(p,q). The phase of h(p,q) is folded
// into the rotation so the residual 2x2 problem is real symmetric.
void rotate(CMatrix& h, CMatrix& v, std::size_t p, std::size_t q) {
    const double apq = std::abs(h(p, q));
    if (apq < 1e-300) return;
    const Complex phase = h(p, q) / apq;
    const double app = h(p, p).real();
    const double aqq = h(q, q).real();
    const double tau = (app - aqq) / (2.0 * apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = h.rows();
    // column update h <- h U with U(p,p)=c, U(q,p)=s e^{-i phi},
    // U(p,q)=-s e^{i phi}, U(q,q)=c
    for (std::size_t k = 0; k < n; ++k) {
        const Complex hp = h(k, p);
        const Complex hq = h(k, q);
        h(k, p) = c * hp + s * std::conj(phase) * hq;
        h(k, q) = -s * phase * hp + c * hq;
    }
    // row update h <- U† h
    for (std::size_t k = 0; k < n; ++k) {
        const Complex hp = h(p, k);
        const Complex hq = h(q, k);
        h(p, k) = c * hp + s * phase * hq;
        h(q, k) = -s * std::conj(phase) * hp + c * hq;
    }
    // accumulate eigenvectors as columns, v <- v U
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vp = v(k, p);
        const Complex vq = v(k, q);
        v(k, p) = c * vp + s * std::conj(phase) * vq;
        v(k, q) = -s * phase * vp + c * vq;
    }
}

void fix_phase(std::vector<Complex>& column) {
    for (const Complex& z : column) {
        const double a = std::abs(z);
        if (a > 1e-8) {
            const Complex factor = std::conj(z) / a;
            for (Complex& w : column) w *= factor;
            return;
        }
    }
}

} // namespace

Spectrum spectral_decomposition(const Observable& a, const std::vector<std::string>& labels) {
    const std::size_t n = a.dimension();
    if (labels.size() != n) throw DimensionMismatchError("label count does not match dimension");

    CMatrix h = a.matrix();
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, h.max_abs());

    for (int sweep = 0; sweep < 128; ++sweep) {
        if (max_off_diagonal(h) <= 1e-14 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(h, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return h(i, i).real() < h(j, j).real();
    });

    std::vector<double> eigenvalues(n);
    std::vector<std::vector<Complex>> columns(n, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
        eigenvalues[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) columns[k][i] = v(i, order[k]);
    }

    // Ordered Gram-Schmidt inside each near-degenerate group.
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && eigenvalues[end] - eigenvalues[end - 1] < 1e-9) ++end;
        for (std::size_t k = start; k < end; ++k) {
            for (std::size_t m = start; m < k; ++m) {
                Complex ov{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) ov += std::conj(columns[m][i]) * columns[k][i];
                for (std::size_t i = 0; i < n; ++i) columns[k][i] -= ov * columns[m][i];
            }
            double nrm = 0.0;
            for (const Complex& z : columns[k]) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            for (Complex& z : columns[k]) z /= nrm;
        }
        start = end;
    }

    Spectrum spec;
    spec.eigenvalues = std::move(eigenvalues);
    spec.eigenvectors.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        fix_phase(columns[k]);
        spec.eigenvectors.emplace_back(labels, std::move(columns[k]));
    }
    return spec;
}

Spectrum spectral_decomposition(const Observable& a) {
    std::vector<std::string> labels(a.dimension());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i);
    return spectral_decomposition(a, labels);
}

} // namespace weakval
