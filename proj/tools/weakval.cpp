// weakval: weak values, consistency checks and extremal post-selections for
// small labeled Hilbert spaces. Exit codes: 0 success, 1 check or
// convergence failure, 2 usage or validation error.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "weakval/errors.hpp"
#include "weakval/scenario_io.hpp"
#include "weakval/scenarios.hpp"
#include "weakval/strange.hpp"
#include "weakval/table_render.hpp"

namespace {

using weakval::TableFormat;
using ordered_json = nlohmann::ordered_json;

TableFormat parse_format(const std::string& name) {
    if (name == "text") return TableFormat::text;
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    throw std::invalid_argument("unknown format '" + name + "'; valid: text, csv, json");
}

// built-in tables; pauli-y and nonorthogonal use the x-polarized pre-state,
// bloch and projector the (0.6, 0.8) one
weakval::WeakValueTable built_in_table(const std::string& scenario, const std::string& variant) {
    if (scenario == "hardy") {
        static const std::map<std::string, weakval::HardyTableVariant> variants{
            {"noncommuting", weakval::HardyTableVariant::noncommuting},
            {"cancellation", weakval::HardyTableVariant::cancellation},
            {"orthogonal", weakval::HardyTableVariant::orthogonal}};
        if (variant == "general")
            return weakval::hardy_general_table(weakval::HardyCoefficients::standard());
        const auto it = variants.find(variant);
        if (it == variants.end())
            throw std::invalid_argument("unknown table variant '" + variant +
                                        "' for hardy; valid: noncommuting, cancellation, "
                                        "orthogonal, general");
        return weakval::hardy_table(it->second);
    }
    if (scenario == "spin") {
        static const std::map<std::string, weakval::SpinTableVariant> variants{
            {"pauli-y", weakval::SpinTableVariant::pauli_y},
            {"nonorthogonal", weakval::SpinTableVariant::nonorthogonal},
            {"bloch", weakval::SpinTableVariant::bloch},
            {"projector", weakval::SpinTableVariant::projector}};
        const auto it = variants.find(variant);
        if (it == variants.end())
            throw std::invalid_argument("unknown table variant '" + variant +
                                        "' for spin; valid: pauli-y, nonorthogonal, bloch, "
                                        "projector");
        const bool x_pre = (it->second == weakval::SpinTableVariant::pauli_y ||
                            it->second == weakval::SpinTableVariant::nonorthogonal);
        return weakval::spin_table(it->second, x_pre ? weakval::SpinParams::x_plus()
                                                     : weakval::SpinParams{0.6, 0.8});
    }
    throw std::invalid_argument("unknown scenario '" + scenario + "'; valid: hardy, spin");
}

weakval::Scenario built_in_scenario(const std::string& scenario) {
    if (scenario == "hardy") return weakval::build_hardy();
    if (scenario == "spin")
        return weakval::build_spin(weakval::SpinParams{0.6, 0.8},
                                   weakval::SpinBasis::computational);
    throw std::invalid_argument("unknown scenario '" + scenario + "'; valid: hardy, spin");
}

int cmd_scenario(const std::string& name, const std::string& variant, const std::string& format,
                 const std::string& export_path, bool split_complex) {
    if (!export_path.empty()) weakval::save_scenario(built_in_scenario(name), export_path);
    const weakval::WeakValueTable table = built_in_table(name, variant);
    weakval::RenderOptions opts;
    opts.split_complex = split_complex;
    std::cout << weakval::render_table(table, parse_format(format), opts);
    return 0;
}

int cmd_check(const std::string& path, const std::string& format) {
    const weakval::Scenario scen = weakval::load_scenario(path);
    const std::vector<weakval::CheckOutcome> outcomes = weakval::run_checks(scen);
    bool all_passed = true;
    for (const weakval::CheckOutcome& o : outcomes) all_passed &= o.passed;

    const TableFormat fmt = parse_format(format);
    if (fmt == TableFormat::json) {
        ordered_json doc;
        doc["checks"] = ordered_json::array();
        for (const weakval::CheckOutcome& o : outcomes)
            doc["checks"].push_back({{"name", o.name},
                                     {"max_residual", o.max_residual},
                                     {"tolerance", o.tolerance},
                                     {"skipped_columns", o.skipped_columns},
                                     {"passed", o.passed}});
        doc["all_passed"] = all_passed;
        std::cout << doc.dump(2) << "\n";
    } else {
        const char* sep = (fmt == TableFormat::csv) ? "," : "  ";
        for (const weakval::CheckOutcome& o : outcomes) {
            std::ostringstream line;
            line << o.name << sep << "max_residual=" << weakval::format_real(o.max_residual)
                 << sep << "tolerance=" << weakval::format_real(o.tolerance);
            if (o.skipped_columns > 0) line << sep << "skipped=" << o.skipped_columns;
            line << sep << (o.passed ? "PASS" : "FAIL");
            std::cout << line.str() << "\n";
        }
        std::cout << (all_passed ? "all checks passed" : "some checks failed") << "\n";
    }
    return all_passed ? 0 : 1;
}

int cmd_optimize(const std::string& path, const std::string& observable, double xi,
                 const std::string& objective_name, std::size_t resolution,
                 const std::string& format) {
    const weakval::Scenario scen = weakval::load_scenario(path);
    const weakval::Observable& op = scen.find_observable(observable);
    const weakval::Objective objective = (objective_name == "max")
                                             ? weakval::Objective::maximize
                                             : weakval::Objective::minimize;

    const weakval::OptimalPostSelection sol =
        weakval::solve_optimal_postselection(scen.pre, op, xi, objective);
    const weakval::GridExtremum oracle =
        weakval::grid_oracle_extremal(scen.pre, op, xi, resolution, objective);
    const weakval::Spectrum spectrum = weakval::spectral_decomposition(op, scen.labels);
    const weakval::StrangenessReport report =
        weakval::classify_strangeness(sol.weak_value, spectrum);
    const char* classification = report.classification == weakval::Strangeness::within
                                     ? "within"
                                     : (report.classification == weakval::Strangeness::above_max
                                            ? "above_max"
                                            : "below_min");

    if (parse_format(format) == TableFormat::json) {
        ordered_json doc;
        doc["observable"] = observable;
        doc["objective"] = (objective == weakval::Objective::maximize) ? "max" : "min";
        doc["xi"] = xi;
        doc["phi"] = ordered_json::object();
        for (std::size_t i = 0; i < scen.labels.size(); ++i)
            doc["phi"][scen.labels[i]] = sol.phi[i].real();
        doc["weak_value"] = sol.weak_value;
        doc["lambda"] = sol.lambda;
        doc["mu"] = sol.mu;
        doc["stationarity_residual"] = sol.stationarity_residual;
        doc["iterations"] = sol.iterations;
        doc["converged"] = sol.converged;
        doc["oracle_value"] = oracle.value;
        doc["oracle_delta"] = std::abs(sol.weak_value - oracle.value);
        doc["oracle_resolution"] = resolution;
        doc["spectrum_min"] = report.spectrum_min;
        doc["spectrum_max"] = report.spectrum_max;
        doc["classification"] = classification;
        std::cout << doc.dump(2) << "\n";
    } else {
        using weakval::format_real;
        std::cout << "observable             " << observable << "\n";
        std::cout << "objective              "
                  << ((objective == weakval::Objective::maximize) ? "max" : "min") << "\n";
        std::cout << "xi                     " << format_real(xi) << "\n";
        for (std::size_t i = 0; i < scen.labels.size(); ++i) {
            const std::string field = "phi." + scen.labels[i];
            std::cout << field << std::string(23 - std::min<std::size_t>(22, field.size()), ' ')
                      << format_real(sol.phi[i].real()) << "\n";
        }
        std::cout << "weak_value             " << format_real(sol.weak_value) << "\n";
        std::cout << "lambda                 " << format_real(sol.lambda) << "\n";
        std::cout << "mu                     " << format_real(sol.mu) << "\n";
        std::cout << "stationarity_residual  " << format_real(sol.stationarity_residual) << "\n";
        std::cout << "iterations             " << sol.iterations << "\n";
        std::cout << "converged              " << (sol.converged ? "yes" : "no") << "\n";
        std::cout << "oracle_value           " << format_real(oracle.value) << "\n";
        std::cout << "oracle_delta           "
                  << format_real(std::abs(sol.weak_value - oracle.value)) << "\n";
        std::cout << "spectrum               [" << format_real(report.spectrum_min) << ", "
                  << format_real(report.spectrum_max) << "]\n";
        std::cout << "classification         " << classification << "\n";
    }
    return sol.converged ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak values for pre- and post-selected quantum systems"};
    app.require_subcommand(1);

    std::string scenario_name, table_variant, export_path;
    std::string format = "text";
    bool split_complex = false;
    CLI::App* scenario = app.add_subcommand("scenario", "emit a built-in table");
    scenario->add_option("name", scenario_name, "hardy or spin")->required();
    scenario->add_option("--table", table_variant, "table variant");
    scenario->add_option("--format", format, "text, csv or json");
    scenario->add_option("--export", export_path, "write the scenario document to this path");
    scenario->add_flag("--split-complex", split_complex, "render cells as (re, im)");

    std::string check_path;
    CLI::App* check = app.add_subcommand("check", "run the checks of a scenario document");
    check->add_option("path", check_path, "scenario JSON document")->required();
    check->add_option("--format", format, "text, csv or json");

    std::string opt_path, observable, objective = "min";
    double xi = 0.0;
    std::size_t resolution = 2000;
    CLI::App* optimize = app.add_subcommand("optimize", "extremal post-selection on the cone");
    optimize->add_option("path", opt_path, "scenario JSON document")->required();
    optimize->add_option("--observable", observable, "observable name")->required();
    optimize->add_option("--xi", xi, "cone angle in radians")->required();
    optimize->add_option("--objective", objective, "min or max");
    optimize->add_option("--resolution", resolution, "oracle grid points per angle");
    optimize->add_option("--format", format, "text or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (scenario->parsed()) {
            if (table_variant.empty() && !export_path.empty()) {
                weakval::save_scenario(built_in_scenario(scenario_name), export_path);
                return 0;
            }
            if (table_variant.empty())
                table_variant = (scenario_name == "spin") ? "pauli-y" : "noncommuting";
            return cmd_scenario(scenario_name, table_variant, format, export_path, split_complex);
        }
        if (check->parsed()) return cmd_check(check_path, format);
        if (optimize->parsed()) {
            if (objective != "min" && objective != "max")
                throw std::invalid_argument("objective must be min or max");
            return cmd_optimize(opt_path, observable, xi, objective, resolution, format);
        }
    } catch (const weakval::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const weakval::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
