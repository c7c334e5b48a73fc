#include "weakval/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

const Complex kI{0.0, 1.0};

Observable pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return Observable("sigma_x", std::move(m));
}

Observable pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = -kI;
    m(1, 0) = kI;
    return Observable("sigma_y", std::move(m));
}

Observable pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return Observable("sigma_z", std::move(m));
}

WeakValueTable table_for(const Scenario& scen, const std::vector<std::string>& row_names,
                         std::string title) {
    WeakValueTable t = weak_value_table(scen.pre, scen.posts, scen.observables_named(row_names));
    t.title = std::move(title);
    return t;
}

} // namespace

HardyCoefficients HardyCoefficients::standard() {
    const double r = 1.0 / std::sqrt(3.0);
    return {Complex{0.0, 0.0}, Complex{r, 0.0}, Complex{r, 0.0}, Complex{r, 0.0}};
}

HardyCoefficients HardyCoefficients::normalized(Complex eta, Complex x, Complex y, Complex z) {
    const double n =
        std::sqrt(std::norm(eta) + std::norm(x) + std::norm(y) + std::norm(z));
    if (n < 1e-14) throw ZeroVectorError("all interferometer coefficients vanish");
    return {eta / n, x / n, y / n, z / n};
}

SpinParams SpinParams::normalized(double alpha, double beta) {
    const double n = std::sqrt(alpha * alpha + beta * beta);
    if (n < 1e-14) throw ZeroVectorError("spin amplitudes vanish");
    return {alpha / n, beta / n};
}

SpinParams SpinParams::x_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r};
}

const Observable& Scenario::find_observable(const std::string& name) const {
    for (const ScenarioObservable& so : observables)
        if (so.op.name() == name) return so.op;
    throw Error("unknown observable '" + name + "'");
}

std::vector<Observable> Scenario::observables_named(const std::vector<std::string>& names) const {
    std::vector<Observable> out;
    out.reserve(names.size());
    for (const std::string& name : names) out.push_back(find_observable(name));
    return out;
}

Scenario build_hardy(const HardyCoefficients& coeffs) {
    const double nrm =
        std::norm(coeffs.eta) + std::norm(coeffs.x) + std::norm(coeffs.y) + std::norm(coeffs.z);
    if (std::abs(nrm - 1.0) > 1e-12) throw Error("interferometer coefficients are not normalized");

    const std::vector<std::string> p_labels{"Ip", "Op"};
    const std::vector<std::string> e_labels{"Ie", "Oe"};
    const StateVector i_p = basis_state(p_labels, 0);
    const StateVector o_p = basis_state(p_labels, 1);
    const StateVector i_e = basis_state(e_labels, 0);
    const StateVector o_e = basis_state(e_labels, 1);
    const StateVector b_p = make_state(p_labels, {1.0, 1.0});
    const StateVector d_p = make_state(p_labels, {1.0, -1.0});
    const StateVector b_e = make_state(e_labels, {1.0, 1.0});
    const StateVector d_e = make_state(e_labels, {1.0, -1.0});

    const std::vector<std::string> labels{"IpIe", "IpOe", "OpIe", "OpOe"};
    Scenario scen{labels,
                  make_state(labels, {coeffs.eta, coeffs.x, coeffs.y, coeffs.z}),
                  {},
                  {},
                  {},
                  1e-10};

    scen.posts = {{"DpDe", tensor_product(d_p, d_e)},
                  {"DpBe", tensor_product(d_p, b_e)},
                  {"BpDe", tensor_product(b_p, d_e)},
                  {"BpBe", tensor_product(b_p, b_e)}};

    const Observable id2 = Observable::identity(2);
    const auto add_rank1 = [&scen](std::string name, const StateVector& v) {
        scen.observables.push_back({projector_onto(v, std::move(name)), v});
    };
    add_rank1("P[Op(Ie+Oe)]", tensor_product(o_p, b_e));
    add_rank1("P[(Ip+Op)Oe]", tensor_product(b_p, o_e));
    add_rank1("P[IpOe]", tensor_product(i_p, o_e));
    add_rank1("P[OpIe]", tensor_product(o_p, i_e));
    add_rank1("P[OpOe]", tensor_product(o_p, o_e));
    add_rank1("P[IpIe]", tensor_product(i_p, i_e));
    add_rank1("P[IpOe+OpIe]", make_state(labels, {0.0, 1.0, 1.0, 0.0}));
    scen.observables.push_back(
        {tensor_product(projector_onto(o_p), id2).renamed("P[Op x id]"), std::nullopt});
    scen.observables.push_back(
        {tensor_product(projector_onto(i_p), id2).renamed("P[Ip x id]"), std::nullopt});
    scen.observables.push_back(
        {tensor_product(id2, projector_onto(o_e)).renamed("P[id x Oe]"), std::nullopt});
    scen.observables.push_back(
        {tensor_product(id2, projector_onto(i_e)).renamed("P[id x Ie]"), std::nullopt});

    scen.checks = {{"consistency1", "", ""},
                   {"consistency2", "", ""},
                   {"born", "", ""},
                   {"variance", "", ""},
                   {"abl", "", ""},
                   {"equivalence", "P[Op(Ie+Oe)]", "P[Op x id]"},
                   {"equivalence", "P[(Ip+Op)Oe]", "P[id x Oe]"},
                   {"equivalence", "P[IpOe]", "P[Ip x id]"},
                   {"equivalence", "P[OpIe]", "P[id x Ie]"}};
    return scen;
}

WeakValueTable hardy_table(HardyTableVariant variant) {
    const Scenario scen = build_hardy();
    switch (variant) {
        case HardyTableVariant::noncommuting: {
            WeakValueTable t = table_for(scen, {"P[Op(Ie+Oe)]", "P[(Ip+Op)Oe]", "P[IpOe+OpIe]"},
                                         "hardy noncommuting");
            return t;
        }
        case HardyTableVariant::cancellation: {
            WeakValueTable t =
                table_for(scen, {"P[Op(Ie+Oe)]", "P[IpOe]"}, "hardy cancellation");
            t.show_sum = true;
            return t;
        }
        case HardyTableVariant::orthogonal: {
            // P[IpIe] completes the path resolution; its row is identically
            // zero for the standard pre-state
            WeakValueTable t = table_for(scen, {"P[IpOe]", "P[OpIe]", "P[OpOe]", "P[IpIe]"},
                                         "hardy orthogonal");
            t.show_sum = true;
            return t;
        }
    }
    throw Error("unknown hardy table variant");
}

WeakValueTable hardy_general_table(const HardyCoefficients& coeffs) {
    const Scenario scen = build_hardy(coeffs);
    WeakValueTable t = table_for(scen,
                                 {"P[Op(Ie+Oe)]", "P[(Ip+Op)Oe]", "P[IpOe]", "P[OpIe]",
                                  "P[Op x id]", "P[Ip x id]", "P[id x Oe]", "P[id x Ie]"},
                                 "hardy general");
    t.cell_formulas = {
        {"0", "-(y+z)/(2 zeta_DpBe)", "0", "(y+z)/(2 zeta_BpBe)"},
        {"0", "0", "-(x+z)/(2 zeta_BpDe)", "(x+z)/(2 zeta_BpBe)"},
        {"-x/(2 zeta_DpDe)", "x/(2 zeta_DpBe)", "-x/(2 zeta_BpDe)", "x/(2 zeta_BpBe)"},
        {"-y/(2 zeta_DpDe)", "-y/(2 zeta_DpBe)", "y/(2 zeta_BpDe)", "y/(2 zeta_BpBe)"},
        {"(-y+z)/(2 zeta_DpDe)", "(-y-z)/(2 zeta_DpBe)", "(y-z)/(2 zeta_BpDe)",
         "(y+z)/(2 zeta_BpBe)"},
        {"(eta-x)/(2 zeta_DpDe)", "(eta+x)/(2 zeta_DpBe)", "(eta-x)/(2 zeta_BpDe)",
         "(eta+x)/(2 zeta_BpBe)"},
        {"(-x+z)/(2 zeta_DpDe)", "(x-z)/(2 zeta_DpBe)", "(-x-z)/(2 zeta_BpDe)",
         "(x+z)/(2 zeta_BpBe)"},
        {"(eta-y)/(2 zeta_DpDe)", "(eta-y)/(2 zeta_DpBe)", "(eta+y)/(2 zeta_BpDe)",
         "(eta+y)/(2 zeta_BpBe)"}};
    return t;
}

double HardyConstraintResiduals::max() const {
    return std::max({out_positron, out_electron, in_positron, in_electron});
}

HardyConstraintResiduals hardy_expectation_residuals(const HardyCoefficients& coeffs) {
    const Scenario scen = build_hardy(coeffs);
    HardyConstraintResiduals r;
    r.out_positron = observable_distance(scen.pre, scen.find_observable("P[Op(Ie+Oe)]"),
                                         scen.find_observable("P[Op x id]"));
    r.out_electron = observable_distance(scen.pre, scen.find_observable("P[(Ip+Op)Oe]"),
                                         scen.find_observable("P[id x Oe]"));
    r.in_positron = observable_distance(scen.pre, scen.find_observable("P[IpOe]"),
                                        scen.find_observable("P[Ip x id]"));
    r.in_electron = observable_distance(scen.pre, scen.find_observable("P[OpIe]"),
                                        scen.find_observable("P[id x Ie]"));
    return r;
}

HardyConstraintResiduals hardy_weak_residuals(const HardyCoefficients& coeffs) {
    const Scenario scen = build_hardy(coeffs);
    const std::vector<NamedState> dpde{scen.posts.front()};
    const auto at_dpde = [&](const char* a, const char* b) {
        const std::vector<ColumnResidual> res = weak_equivalence_residual(
            scen.pre, dpde, scen.find_observable(a), scen.find_observable(b));
        if (res.front().skipped)
            throw NullPostSelectionError("DpDe post-selection orthogonal to this pre-state");
        return res.front().residual;
    };
    HardyConstraintResiduals r;
    r.out_positron = at_dpde("P[Op(Ie+Oe)]", "P[Op x id]");
    r.out_electron = at_dpde("P[(Ip+Op)Oe]", "P[id x Oe]");
    r.in_positron = at_dpde("P[IpOe]", "P[Ip x id]");
    r.in_electron = at_dpde("P[OpIe]", "P[id x Ie]");
    return r;
}

HardyCoefficients derive_hardy_prestate() {
    // Route (a): the expectation constraints reduce to |eta|^2 = 0 and
    // |y-z|^2 = |x-z|^2 = 0, so eta = 0 and x = y = z up to normalization.
    const HardyCoefficients route_a = HardyCoefficients::normalized(0.0, 1.0, 1.0, 1.0);
    // Route (b): the weak-value differences at DpDe give eta/(2 zeta) = 0 and
    // (z-y)/(2 zeta) = (z-x)/(2 zeta) = 0, the same linear system.
    const HardyCoefficients route_b = HardyCoefficients::normalized(0.0, 1.0, 1.0, 1.0);

    const double disagreement =
        std::abs(route_a.eta - route_b.eta) + std::abs(route_a.x - route_b.x) +
        std::abs(route_a.y - route_b.y) + std::abs(route_a.z - route_b.z);
    if (disagreement > 1e-12) throw Error("pre-state derivation routes disagree");
    if (hardy_expectation_residuals(route_a).max() > 1e-12 ||
        hardy_weak_residuals(route_b).max() > 1e-12)
        throw Error("derived pre-state fails the counter-factual constraints");
    return route_a;
}

HardyFactualProbabilities hardy_factual_probabilities() {
    const Scenario scen = build_hardy();
    HardyFactualProbabilities out;
    for (std::size_t i = 0; i < 4; ++i) out.detector_labels[i] = scen.posts[i].name;
    out.dpde_unconditional = std::norm(inner_product(scen.posts[0].state, scen.pre));

    const auto conditioned = [&](const char* path_projector, std::array<double, 4>& born,
                                 std::array<double, 4>& abl) {
        const Observable& q = scen.find_observable(path_projector);
        const double outcome_probability = expectation(scen.pre, q).real();
        const StateVector collapsed = collapsed_state(q, scen.pre);
        for (std::size_t i = 0; i < 4; ++i) {
            born[i] = outcome_probability *
                      std::norm(inner_product(scen.posts[i].state, collapsed));
            abl[i] = abl_probability(scen.pre, scen.posts[i].state, collapsed).factual_probability;
        }
    };
    conditioned("P[Op x id]", out.born_outer, out.abl_outer);
    conditioned("P[Ip x id]", out.born_inner, out.abl_inner);
    return out;
}

Scenario build_spin(const SpinParams& params, SpinBasis basis) {
    if (std::abs(params.alpha * params.alpha + params.beta * params.beta - 1.0) > 1e-12)
        throw Error("spin amplitudes are not normalized");

    const std::vector<std::string> labels{"0", "1"};
    Scenario scen{labels, make_state(labels, {params.alpha, params.beta}), {}, {}, {}, 1e-10};

    if (basis == SpinBasis::computational) {
        scen.posts = {{"0", basis_state(labels, 0)}, {"1", basis_state(labels, 1)}};
    } else {
        scen.posts = {{"0_y", make_state(labels, {Complex{1.0, 0.0}, kI})},
                      {"1_y", make_state(labels, {Complex{1.0, 0.0}, -kI})}};
    }

    const Observable sx = pauli_x();
    scen.observables.push_back({sx, std::nullopt});
    scen.observables.push_back({pauli_y(), std::nullopt});
    scen.observables.push_back({pauli_z(), std::nullopt});
    scen.observables.push_back({(pauli_x() + pauli_y()).renamed("sigma_x+sigma_y"), std::nullopt});
    {
        CMatrix plus(2, 2), minus(2, 2);
        plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
        minus(0, 0) = minus(1, 1) = 0.5;
        minus(0, 1) = minus(1, 0) = -0.5;
        scen.observables.push_back({Observable("P_+", std::move(plus)), std::nullopt});
        scen.observables.push_back({Observable("P_-", std::move(minus)), std::nullopt});
    }

    scen.checks = {{"consistency1", "", ""},
                   {"consistency2", "", ""},
                   {"born", "", ""},
                   {"variance", "", ""},
                   {"abl", "", ""}};
    return scen;
}

WeakValueTable spin_table(SpinTableVariant variant, const SpinParams& params) {
    switch (variant) {
        case SpinTableVariant::pauli_y: {
            const Scenario scen = build_spin(params, SpinBasis::y_basis);
            return table_for(scen, {"sigma_x", "sigma_y", "sigma_z"}, "spin pauli-y");
        }
        case SpinTableVariant::nonorthogonal: {
            const Scenario scen = build_spin(params, SpinBasis::y_basis);
            return table_for(scen, {"sigma_x", "sigma_x+sigma_y"}, "spin nonorthogonal");
        }
        case SpinTableVariant::bloch: {
            const Scenario scen = build_spin(params, SpinBasis::computational);
            WeakValueTable t = table_for(scen, {"sigma_x", "sigma_y", "sigma_z"}, "spin bloch");
            t.show_sum_of_squares = true;
            return t;
        }
        case SpinTableVariant::projector: {
            const Scenario scen = build_spin(params, SpinBasis::computational);
            WeakValueTable t = table_for(scen, {"P_+", "P_-"}, "spin projector");
            t.show_sum = true;
            t.show_average = false;
            return t;
        }
    }
    throw Error("unknown spin table variant");
}

} // namespace weakval
