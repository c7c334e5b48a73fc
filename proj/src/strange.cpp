#include "weakval/strange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

constexpr double kRealTolerance = 1e-10;
constexpr double kPi = 3.14159265358979323846;

std::vector<double> real_vector(const StateVector& s) {
    std::vector<double> v(s.dimension());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(s[i].imag()) > kRealTolerance)
            throw ComplexGeometryError("state has complex amplitudes; real restriction violated");
        v[i] = s[i].real();
    }
    return v;
}

std::vector<std::vector<double>> real_matrix(const Observable& a) {
    const std::size_t n = a.dimension();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(a.matrix()(i, j).imag()) > kRealTolerance)
                throw ComplexGeometryError(
                    "observable has complex entries; real restriction violated");
            m[i][j] = a.matrix()(i, j).real();
        }
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> matvec(const std::vector<std::vector<double>>& m,
                           const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
    return out;
}

void axpy(double s, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

StateVector to_state(const std::vector<std::string>& labels, const std::vector<double>& v) {
    std::vector<Complex> amps(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) amps[i] = Complex{v[i], 0.0};
    return make_state(labels, std::move(amps));
}

void check_xi(double xi) {
    if (!(xi > 0.0) || !(xi < kPi / 2.0))
        throw std::invalid_argument("xi must be in (0, xi_ceiling)");
    if (xi >= kXiCeiling)
        throw NullPostSelectionError("xi beyond ceiling; post-selection overlap vanishes");
}

/// Unit vector along the component of v orthogonal to the unit vector ref;
/// empty when the residual is negligible.
std::vector<double> orthogonal_direction(std::vector<double> v, const std::vector<double>& ref) {
    axpy(-dot(ref, v), ref, v);
    const double n = norm(v);
    if (n < 1e-12) return {};
    for (double& x : v) x /= n;
    return v;
}

/// φ = cos ξ ψ + sin ξ u for a unit u ⟂ ψ, so ⟨φ|ψ⟩ = cos ξ by construction.
std::vector<double> cone_point(const std::vector<double>& psi, const std::vector<double>& u,
                               double xi) {
    std::vector<double> phi(psi.size());
    const double c = std::cos(xi);
    const double s = std::sin(xi);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = c * psi[i] + s * u[i];
    return phi;
}

/// Orthonormal frame {e_2..e_N} spanning the complement of ψ, built by
/// ordered Gram-Schmidt over the eigenvectors of A, then over the canonical
/// basis if rounding left a gap.
std::vector<std::vector<double>> cone_frame(const std::vector<double>& psi,
                                            const Spectrum& spectrum) {
    const std::size_t n = psi.size();
    std::vector<std::vector<double>> frame{psi};
    const auto admit = [&](std::vector<double> v) {
        for (const auto& f : frame) axpy(-dot(f, v), f, v);
        const double nn = norm(v);
        if (nn < 1e-8) return;
        for (double& x : v) x /= nn;
        frame.push_back(std::move(v));
    };
    for (const StateVector& ev : spectrum.eigenvectors) admit(real_vector(ev));
    for (std::size_t i = 0; frame.size() < n && i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        admit(std::move(e));
    }
    frame.erase(frame.begin());
    return frame;
}

struct RealProblem {
    std::vector<double> psi;
    std::vector<std::vector<double>> a;
    std::vector<double> a_psi;
    double exp_a = 0.0;
};

RealProblem realize(const StateVector& pre, const Observable& op) {
    if (op.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimension does not match state");
    RealProblem p;
    p.psi = real_vector(pre);
    p.a = real_matrix(op);
    p.a_psi = matvec(p.a, p.psi);
    p.exp_a = dot(p.psi, p.a_psi);
    return p;
}

} // namespace

PlanarResult planar_postselection(const StateVector& pre, const StateVector& n, double xi,
                                  PlanarBranch branch) {
    require_same_space(pre, n);
    check_xi(xi);
    const std::vector<double> psi = real_vector(pre);
    std::vector<double> nv = real_vector(n);

    double c0 = dot(nv, psi);
    if (std::abs(c0) < 1e-10)
        throw OrthogonalIntermediateError("intermediate state orthogonal to the pre-selection");
    if (c0 < 0.0) {
        // |n⟩⟨n| is phase-free, so flip the sign to keep theta_n acute
        for (double& x : nv) x = -x;
        c0 = -c0;
    }
    if (c0 > 1.0 - 1e-12)
        throw std::invalid_argument("intermediate state parallel to the pre-selection");

    const double theta = std::acos(c0);
    std::vector<double> e = orthogonal_direction(std::move(nv), psi);
    const double sign = (branch == PlanarBranch::minus) ? -1.0 : 1.0;
    for (double& x : e) x *= sign;
    const std::vector<double> phi = cone_point(psi, e, xi);

    const double arg = (branch == PlanarBranch::minus) ? theta + xi : theta - xi;
    return {to_state(pre.labels(), phi), std::cos(arg) * std::cos(theta) / std::cos(xi), theta};
}

StrangenessReport classify_strangeness(double value, const Spectrum& spectrum) {
    StrangenessReport r;
    r.value = value;
    r.spectrum_min = spectrum.min();
    r.spectrum_max = spectrum.max();
    if (value > r.spectrum_max + 1e-10)
        r.classification = Strangeness::above_max;
    else if (value < r.spectrum_min - 1e-10)
        r.classification = Strangeness::below_min;
    else
        r.classification = Strangeness::within;
    return r;
}

GridExtremum grid_oracle_extremal(const StateVector& pre, const Observable& op, double xi,
                                  std::size_t resolution, Objective objective) {
    check_xi(xi);
    if (resolution < 8) throw ResolutionTooCoarseError("resolution must be at least 8 per angle");
    const std::size_t n = pre.dimension();
    if (n < 2 || n > 8) throw std::invalid_argument("grid oracle supports dimensions 2..8");

    const RealProblem p = realize(pre, op);
    const Spectrum spectrum = spectral_decomposition(op, pre.labels());
    const std::vector<std::vector<double>> frame = cone_frame(p.psi, spectrum);
    const std::size_t k = frame.size();  // n-1 directions orthogonal to psi

    const bool minimize = (objective == Objective::minimize);
    double best = minimize ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    std::vector<double> best_u(n, 0.0);

    std::vector<double> u(n, 0.0);
    const auto evaluate = [&](const std::vector<double>& coeffs) {
        std::fill(u.begin(), u.end(), 0.0);
        for (std::size_t d = 0; d < k; ++d) axpy(coeffs[d], frame[d], u);
        const std::vector<double> phi = cone_point(p.psi, u, xi);
        const double w = dot(phi, p.a_psi) / dot(phi, p.psi);
        if (minimize ? (w < best) : (w > best)) {
            best = w;
            best_u = u;
        }
    };

    if (k == 1) {
        // the cone degenerates to exactly two points
        evaluate({1.0});
        evaluate({-1.0});
    } else {
        // angles 0..k-3 span [0, pi] on resolution+1 points; the last angle
        // spans [0, 2*pi) on resolution points
        const std::size_t num_angles = k - 1;
        std::vector<std::size_t> counts(num_angles, resolution + 1);
        counts[num_angles - 1] = resolution;
        std::vector<std::vector<double>> cos_tab(num_angles), sin_tab(num_angles);
        for (std::size_t d = 0; d < num_angles; ++d) {
            const bool last = (d == num_angles - 1);
            cos_tab[d].resize(counts[d]);
            sin_tab[d].resize(counts[d]);
            for (std::size_t i = 0; i < counts[d]; ++i) {
                const double ang = last ? 2.0 * kPi * double(i) / double(resolution)
                                        : kPi * double(i) / double(resolution);
                cos_tab[d][i] = std::cos(ang);
                sin_tab[d][i] = std::sin(ang);
            }
        }

        std::vector<std::size_t> idx(num_angles, 0);
        std::vector<double> coeffs(k);
        bool done = false;
        while (!done) {
            double prefix = 1.0;
            for (std::size_t d = 0; d < num_angles; ++d) {
                coeffs[d] = prefix * cos_tab[d][idx[d]];
                prefix *= sin_tab[d][idx[d]];
            }
            coeffs[k - 1] = prefix;
            evaluate(coeffs);

            done = true;
            for (std::size_t d = num_angles; d-- > 0;) {
                if (++idx[d] < counts[d]) {
                    done = false;
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    return {best, to_state(pre.labels(), cone_point(p.psi, best_u, xi))};
}

OptimalPostSelection solve_optimal_postselection(const StateVector& pre, const Observable& op,
                                                 double xi, Objective objective) {
    check_xi(xi);
    const RealProblem p = realize(pre, op);
    const std::size_t n = pre.dimension();
    const double cos_xi = std::cos(xi);
    const double sin2_xi = std::sin(xi) * std::sin(xi);
    const double scale = std::max(1.0, op.matrix().max_abs());
    const Spectrum spectrum = spectral_decomposition(op, pre.labels());

    const auto multipliers = [&](const std::vector<double>& phi, double& lambda, double& mu) {
        const double phi_a = dot(phi, p.a_psi);
        lambda = (p.exp_a / cos_xi - phi_a) / sin2_xi;
        mu = -(p.exp_a - phi_a / cos_xi) / sin2_xi;
    };
    const auto stationarity = [&](const std::vector<double>& phi, double lambda, double mu) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = p.a_psi[i] / cos_xi - lambda * p.psi[i] - mu * phi[i];
            acc += r * r;
        }
        return std::sqrt(acc);
    };
    const auto finish = [&](const std::vector<double>& phi, int iterations, bool converged) {
        OptimalPostSelection r{to_state(pre.labels(), phi), 0.0, 0.0, 0.0, 0.0, iterations,
                               converged};
        multipliers(phi, r.lambda, r.mu);
        r.stationarity_residual = stationarity(phi, r.lambda, r.mu);
        r.weak_value = dot(phi, p.a_psi) / dot(phi, p.psi);
        return r;
    };

    // A|psi> parallel to |psi>: the weak value is constant on the cone
    std::vector<double> deviation = p.a_psi;
    axpy(-p.exp_a, p.psi, deviation);
    if (norm(deviation) < 1e-12 * scale) {
        const std::vector<std::vector<double>> frame = cone_frame(p.psi, spectrum);
        return finish(cone_point(p.psi, frame.front(), xi), 0, true);
    }

    // seed on the eigenvector with the largest |a_n <n|psi>|
    std::optional<std::size_t> seed_index;
    double seed_score = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double overlap = dot(real_vector(spectrum.eigenvectors[i]), p.psi);
        if (std::abs(overlap) < 1e-8) continue;
        const double score = std::abs(spectrum.eigenvalues[i] * overlap);
        if (score > seed_score + 1e-15) {
            seed_score = score;
            seed_index = i;
        }
    }
    if (!seed_index) seed_index = 0;

    const auto iterate = [&](std::vector<double> phi, int& iterations) {
        bool converged = false;
        for (iterations = 0; iterations < 1000;) {
            ++iterations;
            double lambda = 0.0, mu = 0.0;
            multipliers(phi, lambda, mu);

            std::vector<double> candidate(n);
            if (std::abs(mu) > 1e-13 * scale) {
                for (std::size_t i = 0; i < n; ++i)
                    candidate[i] = (p.a_psi[i] / cos_xi - lambda * p.psi[i]) / mu;
            } else {
                // stationarity is sign-degenerate at mu = 0; steer by objective
                const double s = (objective == Objective::minimize) ? -1.0 : 1.0;
                for (std::size_t i = 0; i < n; ++i) candidate[i] = s * deviation[i];
            }

            std::vector<double> dir = orthogonal_direction(std::move(candidate), p.psi);
            const std::vector<double> projected = dir.empty() ? phi : cone_point(p.psi, dir, xi);

            std::vector<double> blended(n);
            for (std::size_t i = 0; i < n; ++i) blended[i] = 0.5 * phi[i] + 0.5 * projected[i];
            dir = orthogonal_direction(std::move(blended), p.psi);
            const std::vector<double> next = dir.empty() ? phi : cone_point(p.psi, dir, xi);

            double step_sq = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                step_sq += (next[i] - phi[i]) * (next[i] - phi[i]);
            phi = next;
            if (std::sqrt(step_sq) < 1e-12) {
                converged = true;
                break;
            }
        }
        return std::pair{std::move(phi), converged};
    };

    std::optional<OptimalPostSelection> best;
    for (const PlanarBranch branch : {PlanarBranch::minus, PlanarBranch::plus}) {
        const PlanarResult seed =
            planar_postselection(pre, spectrum.eigenvectors[*seed_index], xi, branch);
        int iterations = 0;
        auto [phi, converged] = iterate(real_vector(seed.phi), iterations);
        OptimalPostSelection candidate = finish(phi, iterations, converged);
        const bool better = !best || (objective == Objective::minimize
                                          ? candidate.weak_value < best->weak_value
                                          : candidate.weak_value > best->weak_value);
        if (better) best = std::move(candidate);
    }

    if (!best->converged) {
        // fall back to the oracle's best grid point; resolution shrinks with
        // dimension to keep the sweep tractable
        std::size_t res = 2000;
        if (n == 5) res = 256;
        if (n == 6) res = 64;
        if (n >= 7) res = 16;
        const GridExtremum g = grid_oracle_extremal(pre, op, xi, res, objective);
        return finish(real_vector(g.phi), best->iterations, false);
    }
    return *best;
}

} // namespace weakval
