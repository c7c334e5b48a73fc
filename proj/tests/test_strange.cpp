#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "weakval/errors.hpp"
#include "weakval/strange.hpp"

using namespace weakval;

namespace {

const double kPi = 3.14159265358979323846;
const std::vector<std::string> kHardyLabels{"IpIe", "IpOe", "OpIe", "OpOe"};

StateVector hardy_pre() { return make_state(kHardyLabels, {0.0, 1.0, 1.0, 1.0}); }

// 2-dim real setting with a prescribed angle between |n> and |psi>
struct Planar2D {
    StateVector psi;
    StateVector n;
};

Planar2D planar_case(double theta) {
    return {make_state({"0", "1"}, {1.0, 0.0}),
            make_state({"0", "1"}, {std::cos(theta), std::sin(theta)})};
}

Observable sigma_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return Observable("sigma_x", std::move(m));
}

} // namespace

TEST_CASE("planar minus branch hits the closed form") {
    const Planar2D c = planar_case(kPi / 3.0);
    const PlanarResult r = planar_postselection(c.psi, c.n, kPi / 3.0, PlanarBranch::minus);
    CHECK(r.theta_n == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(r.weak_value == doctest::Approx(-0.5).epsilon(1e-12));
    // the formula value equals the literal ratio on the returned phi
    const Observable p = projector_onto(c.n, "P[n]");
    const Complex direct = weak_value(c.psi, r.phi, p);
    CHECK(direct.real() == doctest::Approx(r.weak_value).epsilon(1e-12));
    CHECK(std::abs(inner_product(r.phi, c.psi).real() - std::cos(kPi / 3.0)) < 1e-12);
}

TEST_CASE("planar grid over the two-point cone confirms the minimum") {
    const Planar2D c = planar_case(kPi / 3.0);
    const Observable p = projector_onto(c.n, "P[n]");
    const GridExtremum g = grid_oracle_extremal(c.psi, p, kPi / 3.0, 16, Objective::minimize);
    CHECK(g.value == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("planar weak value vanishes on the obtuse boundary") {
    const double theta = 0.7;
    const Planar2D c = planar_case(theta);
    const PlanarResult r =
        planar_postselection(c.psi, c.n, kPi / 2.0 - theta, PlanarBranch::minus);
    CHECK(std::abs(r.weak_value) < 1e-10);
}

TEST_CASE("planar negativity condition matches the obtuse test") {
    for (double theta = 0.1; theta < 1.5; theta += 0.14) {
        for (double xi = 0.1; xi < kXiCeiling; xi += 0.13) {
            const Planar2D c = planar_case(theta);
            const PlanarResult r = planar_postselection(c.psi, c.n, xi, PlanarBranch::minus);
            if (theta + xi > kPi / 2.0 + 1e-12)
                CHECK(r.weak_value < 0.0);
            else if (theta + xi < kPi / 2.0 - 1e-12)
                CHECK(r.weak_value > 0.0);
        }
    }
}

TEST_CASE("planar weak value decreases monotonically in xi") {
    const double theta = kPi / 3.0;
    const Planar2D c = planar_case(theta);
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        const double xi = 0.01 + (kXiCeiling - 0.02) * k / 99.0;
        const PlanarResult r = planar_postselection(c.psi, c.n, xi, PlanarBranch::minus);
        CHECK(r.weak_value < previous);
        previous = r.weak_value;
    }
}

TEST_CASE("planar guards its domain") {
    const Planar2D c = planar_case(0.9);
    CHECK_THROWS_AS(planar_postselection(c.psi, c.n, 0.0, PlanarBranch::minus),
                    std::invalid_argument);
    CHECK_THROWS_AS(planar_postselection(c.psi, c.n, kXiCeiling, PlanarBranch::minus),
                    NullPostSelectionError);
    CHECK_THROWS_AS(planar_postselection(c.psi, make_state({"0", "1"}, {0.0, 1.0}), 0.5,
                                         PlanarBranch::minus),
                    OrthogonalIntermediateError);
    const StateVector complex_n =
        make_state({"0", "1"}, {Complex{0.6, 0.0}, Complex{0.0, 0.8}});
    CHECK_THROWS_AS(planar_postselection(c.psi, complex_n, 0.5, PlanarBranch::minus),
                    ComplexGeometryError);
}

TEST_CASE("the interferometer inner-path weak value diverges toward the ceiling") {
    const StateVector psi = hardy_pre();
    const StateVector n = make_state(kHardyLabels, {0.0, 1.0, 0.0, 0.0});
    // the paper's plane parametrization: phi(theta) = cos t |IpOe> + sin t (|OpIe>+|OpOe>)/2;
    // its overlap (sin t + cos t)/sqrt3 vanishes at t = -pi/4 where w blows up
    const Observable p = projector_onto(n, "P[IpOe]");
    const double near_pole = -kPi / 4.0 - 1e-3;  // overlap -> 0 from below, w -> -inf
    const StateVector phi = make_state(
        kHardyLabels, {0.0, std::cos(near_pole), 0.5 * std::sin(near_pole),
                       0.5 * std::sin(near_pole)});
    const Complex w = weak_value(psi, phi, p);
    CHECK(w.real() < -100.0);
    CHECK(std::abs((std::sin(near_pole) + std::cos(near_pole)) / std::sqrt(3.0)) < 1e-3);

    CHECK_THROWS_AS(planar_postselection(psi, n, kXiCeiling + 1e-4, PlanarBranch::minus),
                    NullPostSelectionError);
}

TEST_CASE("grid oracle matches the planar closed form on the interferometer") {
    const StateVector psi = hardy_pre();
    const StateVector n = make_state(kHardyLabels, {0.0, 1.0, 0.0, 0.0});
    const Observable p = projector_onto(n, "P[IpOe]");
    const double xi = kPi / 3.0;
    const double closed_form = (1.0 - std::sqrt(6.0)) / 3.0;  // cos(th+xi) cos th / cos xi
    const GridExtremum g = grid_oracle_extremal(psi, p, xi, 2000, Objective::minimize);
    CHECK(g.value == doctest::Approx(closed_form).epsilon(1e-4));
    CHECK(std::abs(inner_product(g.phi, psi).real() - std::cos(xi)) < 1e-12);
}

TEST_CASE("doubling the oracle resolution barely moves the extremum") {
    const StateVector psi = hardy_pre();
    const Observable p = projector_onto(make_state(kHardyLabels, {0.0, 1.0, 0.0, 0.0}), "P");
    const double xi = kPi / 3.0;
    const double coarse = grid_oracle_extremal(psi, p, xi, 2000, Objective::minimize).value;
    const double fine = grid_oracle_extremal(psi, p, xi, 4000, Objective::minimize).value;
    CHECK(std::abs(coarse - fine) < 1e-4);
}

TEST_CASE("grid oracle rejects coarse resolutions") {
    const Planar2D c = planar_case(0.8);
    const Observable p = projector_onto(c.n, "P");
    CHECK_THROWS_AS(grid_oracle_extremal(c.psi, p, 0.5, 7, Objective::minimize),
                    ResolutionTooCoarseError);
}

TEST_CASE("solver reproduces the planar result for rank-1 observables") {
    for (const double theta : {0.5, 0.9, 1.2}) {
        for (const double xi : {0.4, kPi / 3.0, 1.3}) {
            const Planar2D c = planar_case(theta);
            const Observable p = projector_onto(c.n, "P[n]");
            const PlanarResult planar = planar_postselection(c.psi, c.n, xi, PlanarBranch::minus);
            const OptimalPostSelection sol =
                solve_optimal_postselection(c.psi, p, xi, Objective::minimize);
            CHECK(sol.converged);
            CHECK(std::abs(sol.weak_value - planar.weak_value) < 1e-8);
            CHECK(sol.stationarity_residual < 1e-8);
        }
    }
    // 4-dim rank-1 case
    const StateVector psi = hardy_pre();
    const Observable p = projector_onto(make_state(kHardyLabels, {0.0, 1.0, 0.0, 0.0}), "P");
    const OptimalPostSelection sol =
        solve_optimal_postselection(psi, p, kPi / 3.0, Objective::minimize);
    CHECK(sol.converged);
    CHECK(std::abs(sol.weak_value - (1.0 - std::sqrt(6.0)) / 3.0) < 1e-8);
}

TEST_CASE("solver at small xi stays near the pre-state") {
    const StateVector psi = make_state({"0", "1"}, {1.0, 0.0});
    const OptimalPostSelection sol =
        solve_optimal_postselection(psi, sigma_x(), 1e-5, Objective::maximize);
    CHECK(sol.converged);
    CHECK(std::abs(sol.weak_value - expectation(psi, sigma_x()).real()) < 1e-4);
    CHECK(std::abs(std::abs(inner_product(sol.phi, psi)) - 1.0) < 1e-9);
}

TEST_CASE("solver matches the exact two-point oracle for sigma_x") {
    const StateVector psi = make_state({"0", "1"}, {1.0, 0.0});
    const double xi = kPi / 3.0;
    for (const Objective objective : {Objective::minimize, Objective::maximize}) {
        const OptimalPostSelection sol = solve_optimal_postselection(psi, sigma_x(), xi, objective);
        const GridExtremum g = grid_oracle_extremal(psi, sigma_x(), xi, 2000, objective);
        CHECK(sol.converged);
        CHECK(std::abs(sol.weak_value - g.value) < 1e-6);
        CHECK(sol.stationarity_residual < 1e-8);
        CHECK(std::abs(inner_product(sol.phi, psi).real() - std::cos(xi)) < 1e-9);
    }
}

TEST_CASE("solver is never worse than the oracle") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 3;
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                m(i, j) = entry(rng);
                m(j, i) = m(i, j);
            }
        const Observable a("A", std::move(m));
        std::vector<Complex> raw(n);
        for (Complex& z : raw) z = entry(rng);
        const StateVector pre = make_state(testutil::canonical_labels(n), raw);
        const double xi = 0.3 + 0.1 * trial;

        const OptimalPostSelection lo = solve_optimal_postselection(pre, a, xi, Objective::minimize);
        const OptimalPostSelection hi = solve_optimal_postselection(pre, a, xi, Objective::maximize);
        const GridExtremum glo = grid_oracle_extremal(pre, a, xi, 200, Objective::minimize);
        const GridExtremum ghi = grid_oracle_extremal(pre, a, xi, 200, Objective::maximize);
        CHECK(lo.weak_value <= glo.value + 1e-6);
        CHECK(hi.weak_value >= ghi.value - 1e-6);
        CHECK(lo.stationarity_residual < 1e-8);
        CHECK(hi.stationarity_residual < 1e-8);
    }
}

TEST_CASE("solver handles a weak value that is constant on the cone") {
    const StateVector psi = make_state({"0", "1"}, {1.0, 0.0});
    const OptimalPostSelection sol =
        solve_optimal_postselection(psi, Observable::identity(2), 0.7, Objective::minimize);
    CHECK(sol.converged);
    CHECK(sol.weak_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner_product(sol.phi, psi).real() - std::cos(0.7)) < 1e-12);
}

TEST_CASE("solver rejects complex scenarios and bad xi") {
    const StateVector complex_pre =
        make_state({"0", "1"}, {Complex{0.6, 0.0}, Complex{0.0, 0.8}});
    CHECK_THROWS_AS(solve_optimal_postselection(complex_pre, sigma_x(), 0.5, Objective::minimize),
                    ComplexGeometryError);
    const StateVector psi = make_state({"0", "1"}, {1.0, 0.0});
    CHECK_THROWS_AS(solve_optimal_postselection(psi, sigma_x(), -0.1, Objective::minimize),
                    std::invalid_argument);
}

TEST_CASE("real nonnegative projector weak values keep observables in range") {
    // whenever every eigen-projector weak value is real and >= 0, the
    // observable's weak value sits inside the spectrum
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    int found = 0;
    for (int trial = 0; trial < 4000 && found < 50; ++trial) {
        CMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) {
                m(i, j) = entry(rng);
                m(j, i) = m(i, j);
            }
        const Observable a("A", std::move(m));
        std::vector<Complex> pre_raw(3), post_raw(3);
        for (Complex& z : pre_raw) z = entry(rng);
        for (Complex& z : post_raw) z = entry(rng);
        const StateVector pre = make_state(testutil::canonical_labels(3), pre_raw);
        const StateVector post = make_state(testutil::canonical_labels(3), post_raw);
        if (std::abs(inner_product(post, pre)) < 0.05) continue;

        const Spectrum spec = spectral_decomposition(a, pre.labels());
        bool all_nonnegative = true;
        double weighted = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const Complex wk = weak_value(pre, post, projector_onto(spec.eigenvectors[k]));
            if (std::abs(wk.imag()) > 1e-10 || wk.real() < 0.0) {
                all_nonnegative = false;
                break;
            }
            weighted += spec.eigenvalues[k] * wk.real();
        }
        if (!all_nonnegative) continue;
        ++found;
        CHECK(weighted >= spec.min() - 1e-10);
        CHECK(weighted <= spec.max() + 1e-10);
    }
    CHECK(found == 50);
}

TEST_CASE("strangeness classification") {
    Spectrum spec;
    spec.eigenvalues = {-1.0, 1.0};

    CHECK(classify_strangeness(1.0, spec).classification == Strangeness::within);
    CHECK(classify_strangeness(1.0 + 1e-12, spec).classification == Strangeness::within);
    CHECK(classify_strangeness(3.0, spec).classification == Strangeness::above_max);
    CHECK(classify_strangeness(-2.0, spec).classification == Strangeness::below_min);

    // two-level construction: pre = alpha|N> + beta|1> in the sigma_x
    // eigenbasis, post = (|N> + |1>)/sqrt2 = |0>, weak value 1 - 2 beta/(alpha+beta)
    const auto two_level_weak_value = [](double alpha, double beta) {
        const double nrm = std::sqrt(alpha * alpha + beta * beta);
        alpha /= nrm;
        beta /= nrm;
        const double s = 1.0 / std::sqrt(2.0);
        const StateVector pre =
            make_state({"0", "1"}, {s * (alpha + beta), s * (alpha - beta)});
        const StateVector post = make_state({"0", "1"}, {1.0, 0.0});
        return weak_value(pre, post, sigma_x()).real();
    };

    // (|0> - 2|1>)/sqrt5 corresponds to alpha/beta = -1/3 and lands below the minimum
    {
        const StateVector pre = make_state({"0", "1"}, {1.0, -2.0});
        const StateVector post = make_state({"0", "1"}, {1.0, 0.0});
        const double w = weak_value(pre, post, sigma_x()).real();
        CHECK(w == doctest::Approx(-2.0).epsilon(1e-12));
        const Spectrum sx = spectral_decomposition(sigma_x(), pre.labels());
        CHECK(classify_strangeness(w, sx).classification == Strangeness::below_min);
    }

    // alpha/beta < -1 pushes the weak value above the maximum eigenvalue
    {
        const double w = two_level_weak_value(-2.0, 1.0);
        CHECK(w == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(classify_strangeness(w, spec).classification == Strangeness::above_max);
        CHECK(w == doctest::Approx(1.0 - 2.0 * (1.0 / (-2.0 + 1.0))).epsilon(1e-12));
    }

    // sweeping alpha/beta toward -1 from below blows the magnitude past 10
    {
        double largest = 0.0;
        for (int k = 1; k <= 49; ++k) {
            const double ratio = -1.2 + 0.004 * k;  // stays inside (-1.2, -1.0)
            largest = std::max(largest, std::abs(two_level_weak_value(ratio, 1.0)));
        }
        CHECK(largest > 10.0);
    }
}
