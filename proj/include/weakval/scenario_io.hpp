#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "weakval/scenarios.hpp"

namespace weakval {

/// Parses and validates a scenario document (schema_version "1"). Any
/// defect raises SchemaError with the offending field path in the message.
Scenario parse_scenario(const nlohmann::ordered_json& doc);

Scenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_to_json(const Scenario& scen);

void save_scenario(const Scenario& scen, const std::string& path);

/// Result of one check run against a scenario document.
struct CheckOutcome {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    int skipped_columns = 0;
};

/// Runs every check listed in the scenario at its tolerance.
std::vector<CheckOutcome> run_checks(const Scenario& scen);

} // namespace weakval
