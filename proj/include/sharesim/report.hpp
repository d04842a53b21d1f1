// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/audit.hpp"
#include "sharesim/scenario.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace sharesim
{

// Every JSON document the toolchain writes goes through this: two-space
// indent, keys sorted (nlohmann objects already are), trailing newline.
// Byte-identical output for identical inputs is what makes the golden
// fixtures meaningful.
std::string canonical_dump(const nlohmann::json& doc);

// {key_bits, kind, marker_hex, mitm_scope, mode, name, policy, seed}
nlohmann::json scenario_to_json(const Scenario& sc);

// Inverse of scenario_to_json. kind, policy and mode are required; the rest
// default exactly like make_scenario. Throws ConfigError on anything it
// cannot understand.
Scenario scenario_from_json(const nlohmann::json& doc);

// Reads a scenario config file. Throws ConfigError on I/O or parse failure.
Scenario load_scenario_file(const std::string& path);

nlohmann::json attack_report_json(const Scenario& sc, const RunResult& rr);
std::string attack_report_text(const Scenario& sc, const RunResult& rr);

nlohmann::json matrix_report_json(const MatrixReport& report);
std::string matrix_report_text(const MatrixReport& report);

nlohmann::json audit_report_json(const DeploymentDescriptor& desc,
                                 const AuditFinding& finding);
std::string audit_report_text(const DeploymentDescriptor& desc,
                              const AuditFinding& finding);

} // namespace sharesim
