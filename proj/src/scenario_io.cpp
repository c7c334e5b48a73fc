#include "weakval/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

Complex parse_complex(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a [re, im] pair of numbers");
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) fail(path, "non-finite number");
    return {re, im};
}

std::vector<Complex> parse_amplitudes(const ordered_json& j, const std::string& path,
                                      std::size_t dimension) {
    if (!j.is_array()) fail(path, "expected an array of [re, im] pairs");
    if (j.size() != dimension)
        fail(path, "expected " + std::to_string(dimension) + " amplitudes, got " +
                       std::to_string(j.size()));
    std::vector<Complex> amps;
    amps.reserve(dimension);
    for (std::size_t i = 0; i < dimension; ++i)
        amps.push_back(parse_complex(j[i], path + "[" + std::to_string(i) + "]"));
    return amps;
}

StateVector parse_state(const ordered_json& j, const std::string& path,
                        const std::vector<std::string>& labels) {
    std::vector<Complex> amps = parse_amplitudes(j, path, labels.size());
    try {
        return make_state(labels, std::move(amps));
    } catch (const ZeroVectorError&) {
        fail(path, "zero vector");
    }
}

ordered_json dump_amplitudes(const StateVector& s) {
    ordered_json out = ordered_json::array();
    for (const Complex& z : s.amplitudes())
        out.push_back(ordered_json::array({z.real(), z.imag()}));
    return out;
}

} // namespace

Scenario parse_scenario(const ordered_json& doc) {
    if (!doc.is_object()) fail("document", "expected a JSON object");

    if (!doc.contains("schema_version") || !doc["schema_version"].is_string() ||
        doc["schema_version"].get<std::string>() != "1")
        fail("schema_version", "expected \"1\"");

    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        fail("dimension", "expected a positive integer");
    const long long dimension_raw = doc["dimension"].get<long long>();
    if (dimension_raw < 1 || dimension_raw > static_cast<long long>(kMaxDimension))
        fail("dimension", "must be in [1, 64]");
    const std::size_t dimension = static_cast<std::size_t>(dimension_raw);

    if (!doc.contains("labels") || !doc["labels"].is_array() || doc["labels"].size() != dimension)
        fail("labels", "expected an array of dimension strings");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < dimension; ++i) {
        const auto& l = doc["labels"][i];
        if (!l.is_string()) fail("labels[" + std::to_string(i) + "]", "expected a string");
        const std::string name = l.get<std::string>();
        if (!seen.insert(name).second) fail("labels[" + std::to_string(i) + "]", "duplicate label");
        labels.push_back(name);
    }

    if (!doc.contains("pre_state")) fail("pre_state", "missing");
    const StateVector pre = parse_state(doc["pre_state"], "pre_state", labels);

    std::vector<NamedState> posts;
    if (!doc.contains("post_states") || !doc["post_states"].is_object() ||
        doc["post_states"].empty())
        fail("post_states", "expected a non-empty object of named states");
    for (const auto& [name, value] : doc["post_states"].items())
        posts.push_back({name, parse_state(value, "post_states." + name, labels)});

    std::vector<ScenarioObservable> observables;
    if (!doc.contains("observables") || !doc["observables"].is_object())
        fail("observables", "expected an object of named observables");
    for (const auto& [name, value] : doc["observables"].items()) {
        const std::string path = "observables." + name;
        if (!value.is_object()) fail(path, "expected an object");
        if (value.contains("matrix")) {
            const auto& m = value["matrix"];
            if (!m.is_array() || m.size() != dimension)
                fail(path + ".matrix", "expected " + std::to_string(dimension) + " rows");
            CMatrix mat(dimension, dimension);
            for (std::size_t i = 0; i < dimension; ++i) {
                const std::string row_path = path + ".matrix[" + std::to_string(i) + "]";
                if (!m[i].is_array() || m[i].size() != dimension)
                    fail(row_path, "expected " + std::to_string(dimension) + " entries");
                for (std::size_t j = 0; j < dimension; ++j)
                    mat(i, j) = parse_complex(m[i][j], row_path + "[" + std::to_string(j) + "]");
            }
            try {
                observables.push_back({Observable(name, std::move(mat)), std::nullopt});
            } catch (const NotHermitianError&) {
                fail(path + ".matrix", "not Hermitian");
            }
        } else if (value.contains("projector_onto")) {
            const auto& p = value["projector_onto"];
            if (p.is_string()) {
                const std::string target = p.get<std::string>();
                const StateVector* found = nullptr;
                for (const NamedState& ns : posts)
                    if (ns.name == target) found = &ns.state;
                std::size_t label_index = dimension;
                for (std::size_t i = 0; i < dimension && !found; ++i)
                    if (labels[i] == target) label_index = i;
                if (found) {
                    observables.push_back({projector_onto(*found, name), *found});
                } else if (label_index < dimension) {
                    const StateVector s = basis_state(labels, label_index);
                    observables.push_back({projector_onto(s, name), s});
                } else {
                    fail(path + ".projector_onto", "unknown state '" + target + "'");
                }
            } else {
                const StateVector s = parse_state(p, path + ".projector_onto", labels);
                observables.push_back({projector_onto(s, name), s});
            }
        } else {
            fail(path, "expected either \"matrix\" or \"projector_onto\"");
        }
    }

    std::vector<CheckSpec> checks;
    if (doc.contains("checks")) {
        if (!doc["checks"].is_array()) fail("checks", "expected an array");
        const std::set<std::string> plain{"consistency1", "consistency2", "born", "variance",
                                          "abl"};
        for (std::size_t i = 0; i < doc["checks"].size(); ++i) {
            const std::string path = "checks[" + std::to_string(i) + "]";
            const auto& c = doc["checks"][i];
            if (c.is_string()) {
                const std::string name = c.get<std::string>();
                if (name == "equivalence")
                    fail(path, "equivalence requires {\"equivalence\": {\"a\": ..., \"b\": ...}}");
                if (!plain.count(name)) fail(path, "unknown check '" + name + "'");
                checks.push_back({name, "", ""});
            } else if (c.is_object() && c.contains("equivalence")) {
                const auto& e = c["equivalence"];
                if (!e.is_object() || !e.contains("a") || !e.contains("b") ||
                    !e["a"].is_string() || !e["b"].is_string())
                    fail(path + ".equivalence", "expected observable names \"a\" and \"b\"");
                CheckSpec spec{"equivalence", e["a"].get<std::string>(),
                               e["b"].get<std::string>()};
                for (const std::string& n : {spec.a, spec.b}) {
                    bool known = false;
                    for (const ScenarioObservable& so : observables)
                        if (so.op.name() == n) known = true;
                    if (!known) fail(path + ".equivalence", "unknown observable '" + n + "'");
                }
                checks.push_back(std::move(spec));
            } else {
                fail(path, "expected a check name or an equivalence object");
            }
        }
    }

    double tolerance = 1e-10;
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number()) fail("tolerance", "expected a number");
        tolerance = doc["tolerance"].get<double>();
        if (!(tolerance > 0.0) || !std::isfinite(tolerance)) fail("tolerance", "must be positive");
    }

    return Scenario{std::move(labels), pre, std::move(posts), std::move(observables),
                    std::move(checks), tolerance};
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("file: cannot open '" + path + "'");
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("file: invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

ordered_json scenario_to_json(const Scenario& scen) {
    ordered_json doc;
    doc["schema_version"] = "1";
    doc["dimension"] = scen.labels.size();
    doc["labels"] = scen.labels;
    doc["pre_state"] = dump_amplitudes(scen.pre);
    doc["post_states"] = ordered_json::object();
    for (const NamedState& p : scen.posts) doc["post_states"][p.name] = dump_amplitudes(p.state);
    doc["observables"] = ordered_json::object();
    for (const ScenarioObservable& so : scen.observables) {
        ordered_json entry;
        if (so.projector_state) {
            entry["projector_onto"] = dump_amplitudes(*so.projector_state);
        } else {
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < so.op.dimension(); ++i) {
                ordered_json row = ordered_json::array();
                for (std::size_t j = 0; j < so.op.dimension(); ++j) {
                    const Complex z = so.op.matrix()(i, j);
                    row.push_back(ordered_json::array({z.real(), z.imag()}));
                }
                rows.push_back(std::move(row));
            }
            entry["matrix"] = std::move(rows);
        }
        doc["observables"][so.op.name()] = std::move(entry);
    }
    doc["checks"] = ordered_json::array();
    for (const CheckSpec& c : scen.checks) {
        if (c.type == "equivalence")
            doc["checks"].push_back(ordered_json{{"equivalence", {{"a", c.a}, {"b", c.b}}}});
        else
            doc["checks"].push_back(c.type);
    }
    doc["tolerance"] = scen.tolerance;
    return doc;
}

void save_scenario(const Scenario& scen, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << scenario_to_json(scen).dump(2) << "\n";
}

std::vector<CheckOutcome> run_checks(const Scenario& scen) {
    std::vector<CheckOutcome> outcomes;
    const EngineOptions opts;

    std::vector<StateVector> path_projectors;
    for (std::size_t i = 0; i < scen.labels.size(); ++i)
        path_projectors.push_back(basis_state(scen.labels, i));

    for (const CheckSpec& check : scen.checks) {
        CheckOutcome o;
        o.name = check.type;
        o.tolerance = scen.tolerance;

        if (check.type == "consistency1") {
            for (const ColumnResidual& r :
                 check_consistency_one(scen.pre, scen.posts, path_projectors, opts)) {
                if (r.skipped)
                    ++o.skipped_columns;
                else
                    o.max_residual = std::max(o.max_residual, r.residual);
            }
        } else if (check.type == "consistency2") {
            for (std::size_t i = 0; i < scen.observables.size(); ++i)
                for (std::size_t j = i; j < scen.observables.size(); ++j)
                    o.max_residual = std::max(
                        o.max_residual,
                        check_consistency_two(scen.pre, scen.posts, scen.observables[i].op,
                                              scen.observables[j].op, opts));
        } else if (check.type == "born") {
            for (const ScenarioObservable& so : scen.observables) {
                const WeakValueTable t = weak_value_table(scen.pre, scen.posts, {so.op}, opts);
                o.max_residual = std::max(
                    o.max_residual, std::abs(t.row_averages[0] - expectation(scen.pre, so.op)));
            }
        } else if (check.type == "variance") {
            for (const ScenarioObservable& so : scen.observables) {
                const std::vector<Complex> a_pre = so.op.apply(scen.pre.amplitudes());
                double second = 0.0;
                for (const Complex& z : a_pre) second += std::norm(z);
                const double mean = expectation(scen.pre, so.op).real();
                const double direct = second - mean * mean;
                o.max_residual =
                    std::max(o.max_residual,
                             std::abs(variance_via_weak_values(scen.pre, scen.posts, so.op, opts) -
                                      direct));
            }
        } else if (check.type == "abl") {
            for (const NamedState& p : scen.posts) {
                if (std::abs(inner_product(p.state, scen.pre)) < opts.overlap_floor) {
                    ++o.skipped_columns;
                    continue;
                }
                for (const StateVector& a : path_projectors)
                    o.max_residual =
                        std::max(o.max_residual,
                                 abl_probability(scen.pre, p.state, a).two_form_residual);
            }
        } else if (check.type == "equivalence") {
            o.name = "equivalence[" + check.a + "," + check.b + "]";
            const Observable& a = scen.find_observable(check.a);
            const Observable& b = scen.find_observable(check.b);
            o.max_residual = observable_distance(scen.pre, a, b);
            for (const ColumnResidual& r :
                 weak_equivalence_residual(scen.pre, scen.posts, a, b, opts)) {
                if (r.skipped)
                    ++o.skipped_columns;
                else
                    o.max_residual = std::max(o.max_residual, r.residual);
            }
        } else {
            throw Error("unknown check '" + check.type + "'");
        }

        o.passed = o.max_residual < o.tolerance;
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

} // namespace weakval
