#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "weakval/errors.hpp"
#include "weakval/spectral.hpp"

using namespace weakval;
using testutil::canonical_labels;

namespace {
const double kSqrt2Inv = 1.0 / std::sqrt(2.0);
const double kSqrt3Inv = 1.0 / std::sqrt(3.0);

StateVector hardy_pre() {
    return make_state({"IpIe", "IpOe", "OpIe", "OpOe"}, {0.0, 1.0, 1.0, 1.0});
}
} // namespace

TEST_CASE("make_state normalizes and preserves label order") {
    const StateVector s = make_state({"0", "1"}, {1.0, 1.0});
    CHECK(s[0].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
    CHECK(s[1].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
    CHECK(s.labels() == std::vector<std::string>{"0", "1"});

    const StateVector h = hardy_pre();
    CHECK(std::abs(h[0]) == 0.0);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(h[i] - Complex{kSqrt3Inv, 0.0}) < 1e-15);
}

TEST_CASE("make_state rejects degenerate input") {
    CHECK_THROWS_AS(make_state({"0", "1"}, {0.0, 0.0}), ZeroVectorError);
    CHECK_THROWS_AS(make_state({"0", "1"}, {1.0}), DimensionMismatchError);
    CHECK_THROWS_AS(make_state({"0", "0"}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(make_state({"0", "1"}, {Complex{std::nan(""), 0.0}, 1.0}), Error);
}

TEST_CASE("inner products of the interferometer states") {
    const StateVector psi = hardy_pre();
    const StateVector dpde = make_state(psi.labels(), {1.0, -1.0, -1.0, 1.0});
    const StateVector bpbe = make_state(psi.labels(), {1.0, 1.0, 1.0, 1.0});

    // (eta - x - y + z)/2 at the standard coefficients
    CHECK(inner_product(dpde, psi).real() ==
          doctest::Approx(-0.5 * kSqrt3Inv).epsilon(1e-14));
    CHECK(std::abs(inner_product(dpde, psi).imag()) < 1e-15);
    CHECK(inner_product(bpbe, psi).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(std::norm(inner_product(bpbe, psi)) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(std::abs(inner_product(psi, psi) - Complex{1.0, 0.0}) < 1e-14);

    const StateVector other = make_state({"a", "b"}, {1.0, 0.0});
    CHECK_THROWS_AS(inner_product(other, make_state({"c", "d"}, {1.0, 0.0})),
                    DimensionMismatchError);
}

TEST_CASE("inner product is conjugate-linear in the bra") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<Complex> raw = testutil::random_amplitudes(rng, 4);
        const StateVector u = make_state(canonical_labels(4), raw);
        const StateVector v = testutil::random_state(rng, 4);
        const double angle = 2.0 * trial + 0.3;
        const Complex c{std::cos(angle), std::sin(angle)};
        std::vector<Complex> scaled = raw;
        for (Complex& z : scaled) z *= c;
        const StateVector cu = make_state(canonical_labels(4), scaled);
        CHECK(std::abs(inner_product(cu, v) - std::conj(c) * inner_product(u, v)) < 1e-12);
    }
}

TEST_CASE("tensor products of states and operators") {
    const StateVector o_p = make_state({"Ip", "Op"}, {0.0, 1.0});
    const StateVector b_e = make_state({"Ie", "Oe"}, {1.0, 1.0});
    const StateVector prod = tensor_product(o_p, b_e);
    CHECK(prod.labels() == std::vector<std::string>{"IpIe", "IpOe", "OpIe", "OpOe"});
    CHECK(std::abs(prod[0]) < 1e-15);
    CHECK(std::abs(prod[1]) < 1e-15);
    CHECK(prod[2].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
    CHECK(prod[3].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));

    const Observable id4 = tensor_product(Observable::identity(2), Observable::identity(2));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(id4.matrix()(i, j) - (i == j ? Complex{1.0, 0.0} : Complex{})) <
                  1e-15);

    // P[Op x id] applied to the standard pre-state, against a by-hand matvec
    const Observable p_op =
        tensor_product(projector_onto(o_p), Observable::identity(2)).renamed("P[Op x id]");
    const std::vector<Complex> applied = p_op.apply(hardy_pre().amplitudes());
    const std::vector<Complex> expected{0.0, 0.0, Complex{kSqrt3Inv, 0.0},
                                        Complex{kSqrt3Inv, 0.0}};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(applied[i] - expected[i]) < 1e-14);
}

TEST_CASE("tensor product preserves norms") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector a = testutil::random_state(rng, 3);
        std::vector<Complex> b_raw = testutil::random_amplitudes(rng, 2);
        const StateVector b = make_state({"u", "v"}, b_raw);
        const StateVector product = tensor_product(a, b);
        double norm_sq = 0.0;
        for (const Complex& z : product.amplitudes()) norm_sq += std::norm(z);
        CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("projector_onto produces idempotent rank-1 Hermitian matrices") {
    const Observable p0 = projector_onto(make_state({"0", "1"}, {1.0, 0.0}));
    CHECK(p0.matrix()(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(p0.matrix()(1, 1)) < 1e-15);

    const Observable pplus = projector_onto(make_state({"0", "1"}, {1.0, 1.0}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(pplus.matrix()(i, j).real() == doctest::Approx(0.5).epsilon(1e-14));

    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Observable p = projector_onto(testutil::random_state(rng, n));
        const CMatrix sq = p.matrix() * p.matrix();
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += p.matrix()(i, i).real();
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(sq(i, j) - p.matrix()(i, j)) < 1e-12);
        }
        CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("observable construction rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m(0, 1) = Complex{1.0, 0.0};
    m(1, 0) = Complex{0.5, 0.0};
    CHECK_THROWS_AS(Observable("bad", std::move(m)), NotHermitianError);
}

TEST_CASE("spectral decomposition of the Pauli matrices") {
    CMatrix z(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const Spectrum sz = spectral_decomposition(Observable("sigma_z", std::move(z)));
    CHECK(sz.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sz.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(sz.eigenvectors[0][1] - Complex{1.0, 0.0}) < 1e-12);  // |1>
    CHECK(std::abs(sz.eigenvectors[1][0] - Complex{1.0, 0.0}) < 1e-12);  // |0>

    CMatrix x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const Spectrum sx = spectral_decomposition(Observable("sigma_x", std::move(x)));
    CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sx.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // phase convention: first sizable component real positive
    CHECK(sx.eigenvectors[0][0].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-12));
    CHECK(sx.eigenvectors[0][1].real() == doctest::Approx(-kSqrt2Inv).epsilon(1e-12));
    CHECK(sx.eigenvectors[1][0].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-12));
    CHECK(sx.eigenvectors[1][1].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-12));
}

TEST_CASE("spectral decomposition reconstructs random Hermitian matrices") {
    std::mt19937 rng(14);
    std::uniform_int_distribution<std::size_t> dims(2, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = dims(rng);
        const Observable a = testutil::random_hermitian(rng, n);
        const Spectrum spec = spectral_decomposition(a);

        // eigen-pair residuals
        for (std::size_t k = 0; k < n; ++k) {
            const std::vector<Complex> av = a.apply(spec.eigenvectors[k].amplitudes());
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(av[i] - spec.eigenvalues[k] * spec.eigenvectors[k][i]) < 1e-10);
        }
        // orthonormality
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Complex ov = inner_product(spec.eigenvectors[i], spec.eigenvectors[j]);
                CHECK(std::abs(ov - (i == j ? Complex{1.0, 0.0} : Complex{})) < 1e-10);
            }
        // ascending order and reconstruction
        CMatrix rebuilt(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) CHECK(spec.eigenvalues[k] >= spec.eigenvalues[k - 1]);
            const Observable pk = projector_onto(spec.eigenvectors[k]);
            rebuilt = rebuilt + Complex{spec.eigenvalues[k], 0.0} * pk.matrix();
        }
        CHECK((rebuilt - a.matrix()).max_abs() < 1e-10);
    }
}

TEST_CASE("degenerate spectra come back orthonormal") {
    // twofold degenerate eigenvalue 1 on the x-axis pair
    CMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    const Observable a("deg", std::move(m));
    const Spectrum spec = spectral_decomposition(a);
    CHECK(spec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[3] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(inner_product(spec.eigenvectors[i], spec.eigenvectors[j]) -
                           (i == j ? Complex{1.0, 0.0} : Complex{})) < 1e-10);
}

TEST_CASE("spectral decomposition is deterministic across repeated runs") {
    std::mt19937 rng(15);
    const Observable a = testutil::random_hermitian(rng, 5);
    const Spectrum first = spectral_decomposition(a);
    const Spectrum second = spectral_decomposition(a);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(first.eigenvalues[k] == second.eigenvalues[k]);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(first.eigenvectors[k][i] == second.eigenvectors[k][i]);
    }
}

TEST_CASE("collapsed_state renormalizes the projected component") {
    const StateVector psi = hardy_pre();
    const StateVector o_p = make_state({"Ip", "Op"}, {0.0, 1.0});
    const Observable q = tensor_product(projector_onto(o_p), Observable::identity(2));
    const StateVector collapsed = collapsed_state(q, psi);
    CHECK(std::abs(collapsed[0]) < 1e-15);
    CHECK(std::abs(collapsed[1]) < 1e-15);
    CHECK(collapsed[2].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
    CHECK(collapsed[3].real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));

    const Observable q_null = projector_onto(basis_state(psi.labels(), 0));
    CHECK_THROWS_AS(collapsed_state(q_null, psi), ZeroVectorError);
}
