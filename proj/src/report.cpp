// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/report.hpp"

#include "sharesim/error.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sharesim
{

namespace
{

std::string format_u64(std::uint64_t v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
    return buf;
}

nlohmann::json outcome_to_json(const Outcome& outcome)
{
    nlohmann::json doc;
    doc["kind"] = outcome_kind_name(outcome.kind);
    if (outcome.reason)
        doc["reason"] = reject_reason_name(*outcome.reason);
    else
        doc["reason"] = nullptr;
    return doc;
}

const nlohmann::json& require_field(const nlohmann::json& doc, const char* key)
{
    auto it = doc.find(key);
    if (it == doc.end())
        throw SimError(Err::ConfigError,
                       std::string("scenario config is missing \"") + key + "\"");
    return *it;
}

std::string require_string(const nlohmann::json& doc, const char* key)
{
    const nlohmann::json& field = require_field(doc, key);
    if (!field.is_string())
        throw SimError(Err::ConfigError,
                       std::string("scenario field \"") + key + "\" must be a string");
    return field.get<std::string>();
}

} // namespace

std::string canonical_dump(const nlohmann::json& doc)
{
    return doc.dump(2) + "\n";
}

nlohmann::json scenario_to_json(const Scenario& sc)
{
    nlohmann::json doc;
    doc["key_bits"] = sc.key_bits;
    doc["kind"] = sharing_kind_name(sc.kind);
    doc["marker_hex"] = to_hex(sc.plaintext_marker);
    doc["mitm_scope"] = mitm_scope_name(sc.scope);
    doc["mode"] = server_mode_name(sc.mode);
    doc["name"] = sc.name;
    doc["policy"] = policy_kind_name(sc.policy);
    doc["seed"] = sc.seed;
    return doc;
}

Scenario scenario_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw SimError(Err::ConfigError, "scenario config must be a JSON object");

    static const char* known[] = {"key_bits", "kind",  "marker_hex", "mitm_scope",
                                  "mode",     "name",  "policy",     "seed"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
    {
        bool ok = false;
        for (const char* k : known)
            ok = ok || it.key() == k;
        if (!ok)
            throw SimError(Err::ConfigError,
                           "unknown scenario field \"" + it.key() + "\"");
    }

    auto kind = sharing_kind_from_name(require_string(doc, "kind"));
    if (!kind)
        throw SimError(Err::ConfigError, "unknown sharing kind in scenario config");
    auto policy = policy_kind_from_name(require_string(doc, "policy"));
    if (!policy)
        throw SimError(Err::ConfigError, "unknown policy in scenario config");
    auto mode = server_mode_from_name(require_string(doc, "mode"));
    if (!mode)
        throw SimError(Err::ConfigError, "unknown server mode in scenario config");

    std::uint64_t seed = 0;
    if (auto it = doc.find("seed"); it != doc.end())
    {
        if (!it->is_number_unsigned())
            throw SimError(Err::ConfigError, "scenario seed must be a non-negative integer");
        seed = it->get<std::uint64_t>();
    }

    unsigned key_bits = k_toy_key_bits;
    if (auto it = doc.find("key_bits"); it != doc.end())
    {
        if (!it->is_number_unsigned())
            throw SimError(Err::ConfigError, "scenario key_bits must be a non-negative integer");
        key_bits = it->get<unsigned>();
    }

    MitmScope scope = MitmScope::Full;
    if (auto it = doc.find("mitm_scope"); it != doc.end())
    {
        if (!it->is_string())
            throw SimError(Err::ConfigError, "scenario mitm_scope must be a string");
        auto parsed = mitm_scope_from_name(it->get<std::string>());
        if (!parsed)
            throw SimError(Err::ConfigError, "unknown mitm_scope in scenario config");
        scope = *parsed;
    }

    Scenario sc = make_scenario(*kind, *policy, *mode, seed, key_bits, scope);

    if (auto it = doc.find("marker_hex"); it != doc.end())
    {
        if (!it->is_string())
            throw SimError(Err::ConfigError, "scenario marker_hex must be a string");
        Bytes marker;
        try
        {
            marker = from_hex(it->get<std::string>());
        }
        catch (const SimError&)
        {
            throw SimError(Err::ConfigError, "scenario marker_hex is not valid hex");
        }
        if (marker.size() != 64)
            throw SimError(Err::ConfigError, "scenario marker must be exactly 64 bytes");
        sc.plaintext_marker = std::move(marker);
    }

    if (auto it = doc.find("name"); it != doc.end())
    {
        if (!it->is_string())
            throw SimError(Err::ConfigError, "scenario name must be a string");
        sc.name = it->get<std::string>();
    }

    return sc;
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SimError(Err::ConfigError, "cannot open scenario config " + path);
    nlohmann::json doc;
    try
    {
        in >> doc;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw SimError(Err::ConfigError,
                       "cannot parse scenario config " + path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

nlohmann::json attack_report_json(const Scenario& sc, const RunResult& rr)
{
    nlohmann::json doc;

    doc["scenario"] = scenario_to_json(sc);
    doc["outcome"] = outcome_to_json(rr.outcome);

    if (rr.recipient_verdict)
        doc["recipient_verdict"] = verdict_code(*rr.recipient_verdict);
    else
        doc["recipient_verdict"] = nullptr;

    nlohmann::json breaches = nlohmann::json::array();
    for (const BreachRecord& b : rr.breach_log)
    {
        nlohmann::json entry;
        entry["digest"] = digest_hex(b.plaintext_digest);
        entry["recipient"] = b.victim_recipient;
        entry["sender"] = b.victim_sender;
        entry["when"] = b.when;
        breaches.push_back(entry);
    }
    doc["breach_log"] = breaches;

    nlohmann::json transcript = nlohmann::json::array();
    for (const TranscriptEvent& tev : rr.transcript)
    {
        nlohmann::json entry;
        entry["action"] = tev.action;
        entry["actor"] = actor_name(tev.actor);
        entry["payload_digest"] = tev.payload_digest;
        entry["step"] = tev.step;
        transcript.push_back(entry);
    }
    doc["transcript"] = transcript;

    return doc;
}

std::string attack_report_text(const Scenario& sc, const RunResult& rr)
{
    std::ostringstream out;
    out << "scenario:  " << sc.name << "\n";
    out << "outcome:   " << outcome_kind_name(rr.outcome.kind);
    if (rr.outcome.reason)
        out << " (" << reject_reason_name(*rr.outcome.reason) << ")";
    out << "\n";
    out << "verdict:   "
        << (rr.recipient_verdict ? verdict_code(*rr.recipient_verdict)
                                 : std::string("none"))
        << "\n";
    out << "breaches:  " << rr.breach_log.size() << "\n";
    for (const BreachRecord& b : rr.breach_log)
    {
        out << "  [" << b.when << "] sender=" << b.victim_sender
            << " recipient=" << b.victim_recipient
            << " digest=" << digest_hex(b.plaintext_digest).substr(0, 16) << "...\n";
    }
    out << "transcript:\n";
    for (const TranscriptEvent& tev : rr.transcript)
    {
        char step[16];
        std::snprintf(step, sizeof(step), "%3" PRIu64, tev.step);
        out << "  " << step << "  ";
        std::string actor = actor_name(tev.actor);
        actor.resize(12, ' ');
        out << actor << " " << tev.action << "\n";
    }
    return out.str();
}

nlohmann::json matrix_report_json(const MatrixReport& report)
{
    nlohmann::json doc;
    doc["seed"] = report.seed;

    nlohmann::json cells = nlohmann::json::array();
    for (const MatrixCell& cell : report.cells)
    {
        nlohmann::json entry;
        entry["kind"] = sharing_kind_name(cell.kind);
        entry["mode"] = server_mode_name(cell.mode);
        entry["outcome"] = outcome_kind_name(cell.outcome.kind);
        entry["policy"] = policy_kind_name(cell.policy);
        if (cell.outcome.reason)
            entry["reason"] = reject_reason_name(*cell.outcome.reason);
        else
            entry["reason"] = nullptr;
        cells.push_back(entry);
    }
    doc["cells"] = cells;

    nlohmann::json difficulty;
    for (const auto& [kind, trivial] : report.trivial)
        difficulty[sharing_kind_name(kind)] = trivial ? "trivial" : "non-trivial";
    doc["difficulty"] = difficulty;

    return doc;
}

std::string matrix_report_text(const MatrixReport& report)
{
    std::ostringstream out;
    out << "sharing matrix, seed " << format_u64(report.seed) << "\n\n";

    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w)
            s.resize(w, ' ');
        return s;
    };

    out << pad("kind", 18) << pad("difficulty", 13) << pad("policy", 26)
        << pad("honest", 20) << "malicious-mitm" << "\n";

    // Cells arrive kind-major, then policy, then mode, so consecutive pairs
    // share a row.
    for (std::size_t i = 0; i + 1 < report.cells.size(); i += 2)
    {
        const MatrixCell& honest = report.cells[i];
        const MatrixCell& attacked = report.cells[i + 1];
        auto trivial_it = report.trivial.find(honest.kind);
        std::string difficulty = trivial_it != report.trivial.end() && trivial_it->second
                                     ? "trivial"
                                     : "non-trivial";
        std::string attacked_text = outcome_kind_name(attacked.outcome.kind);
        if (attacked.outcome.reason)
            attacked_text += std::string(" (") +
                             reject_reason_name(*attacked.outcome.reason) + ")";
        out << pad(sharing_kind_name(honest.kind), 18) << pad(difficulty, 13)
            << pad(policy_kind_name(honest.policy), 26)
            << pad(outcome_kind_name(honest.outcome.kind), 20) << attacked_text
            << "\n";
    }
    return out.str();
}

nlohmann::json audit_report_json(const DeploymentDescriptor& desc,
                                 const AuditFinding& finding)
{
    nlohmann::json doc;
    doc["classification"] = deployment_class_name(finding.classification);
    doc["evidence"] = finding.evidence;
    doc["operator"] = desc.service_operator_id;
    return doc;
}

std::string audit_report_text(const DeploymentDescriptor& desc,
                              const AuditFinding& finding)
{
    std::ostringstream out;
    out << "operator:       " << desc.service_operator_id << "\n";
    out << "classification: " << deployment_class_name(finding.classification)
        << "\n";
    out << "evidence:\n";
    for (const std::string& line : finding.evidence)
        out << "  - " << line << "\n";
    return out.str();
}

} // namespace sharesim
