// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/audit.hpp"
#include "sharesim/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace sharesim
{

const char* deployment_class_name(DeploymentClass c)
{
    switch (c)
    {
    case DeploymentClass::ProviderAsRootCA:
        return "ProviderAsRootCA";
    case DeploymentClass::ProviderAsIntermediateCA:
        return "ProviderAsIntermediateCA";
    case DeploymentClass::SelfSignedRootOnly:
        return "SelfSignedRootOnly";
    case DeploymentClass::ThirdPartyOnly:
        return "ThirdPartyOnly";
    }
    return "Unknown";
}

namespace
{

std::string lower(const std::string& s)
{
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool operated_by(const std::string& identity, const std::string& op)
{
    if (op.empty())
        return false;
    return lower(identity).find(lower(op)) != std::string::npos;
}

std::string quoted(const std::string& s)
{
    return "'" + s + "'";
}

} // namespace

AuditFinding audit_deployment(const DeploymentDescriptor& dep)
{
    const std::string& op = dep.service_operator_id;

    bool root_issues = false;   // operator-controlled root signs a chain
    bool intermediate = false;  // operator issues under a foreign root
    bool bare_self_root = false; // operator anchor exists but never issues

    std::vector<std::string> root_ev, inter_ev, self_ev, third_ev;

    for (std::size_t ci = 0; ci < dep.chains.size(); ++ci)
    {
        const CertificateChain& chain = dep.chains[ci];
        if (chain.empty())
            throw SimError(Err::ParameterError, "deployment has empty chain");
        const Certificate& root = chain.back();
        std::string tag = "chain " + std::to_string(ci + 1) + ": ";

        if (chain.size() >= 2 && operated_by(root.subject_id, op))
        {
            root_issues = true;
            root_ev.push_back(tag + "root " + quoted(root.subject_id) +
                              " operated by " + quoted(op) + " issued " +
                              quoted(chain.front().subject_id) +
                              " [key_usage: " + usage_names(root.key_usage) +
                              "]");
        }
        else if (chain.size() >= 2)
        {
            third_ev.push_back(tag + "anchors at third-party root " +
                               quoted(root.subject_id));
        }

        // Intermediates: certificates that issue within the chain but are
        // not the anchor.
        for (std::size_t i = 1; i + 1 < chain.size(); ++i)
        {
            if (operated_by(chain[i].subject_id, op))
            {
                intermediate = true;
                inter_ev.push_back(
                    tag + "intermediate " + quoted(chain[i].subject_id) +
                    " operated by " + quoted(op) +
                    " issues under foreign root " + quoted(root.subject_id) +
                    " [key_usage: " + usage_names(chain[i].key_usage) + "]");
            }
        }

        if (chain.size() == 1 && operated_by(root.subject_id, op) &&
            root.is_self_signed())
        {
            bare_self_root = true;
            self_ev.push_back(tag + "self-signed root " +
                              quoted(root.subject_id) + " operated by " +
                              quoted(op) + ", no issued certificates");
        }
    }

    for (const auto& [alias, cert] : dep.trust_store.entries())
    {
        std::string tag = "trust store " + quoted(alias) + ": ";
        if (operated_by(cert.subject_id, op))
        {
            bare_self_root = true;
            self_ev.push_back(tag + "self-signed root " +
                              quoted(cert.subject_id) + " operated by " +
                              quoted(op) + " [key_usage: " +
                              usage_names(cert.key_usage) + "]");
        }
        else
        {
            third_ev.push_back(tag + "third-party root " +
                               quoted(cert.subject_id));
        }
    }

    AuditFinding finding;
    if (root_issues)
        finding.classification = DeploymentClass::ProviderAsRootCA;
    else if (intermediate)
        finding.classification = DeploymentClass::ProviderAsIntermediateCA;
    else if (bare_self_root)
        finding.classification = DeploymentClass::SelfSignedRootOnly;
    else
        finding.classification = DeploymentClass::ThirdPartyOnly;

    // Operator-related evidence first, strongest capability first.
    for (auto& e : root_ev)
        finding.evidence.push_back(std::move(e));
    for (auto& e : inter_ev)
        finding.evidence.push_back(std::move(e));
    for (auto& e : self_ev)
        finding.evidence.push_back(std::move(e));
    if (finding.classification == DeploymentClass::ThirdPartyOnly)
    {
        for (auto& e : third_ev)
            finding.evidence.push_back(std::move(e));
        if (finding.evidence.empty())
            finding.evidence.push_back(
                "no certificates or trust anchors present");
    }
    return finding;
}

nlohmann::json deployment_to_json(const DeploymentDescriptor& dep)
{
    nlohmann::json j;
    j["service_operator_id"] = dep.service_operator_id;
    nlohmann::json store = nlohmann::json::object();
    for (const auto& [alias, cert] : dep.trust_store.entries())
        store[alias] = base64_encode(encode_certificate(cert));
    j["trust_store"] = store;
    nlohmann::json chains = nlohmann::json::array();
    for (const auto& chain : dep.chains)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& cert : chain)
            arr.push_back(base64_encode(encode_certificate(cert)));
        chains.push_back(arr);
    }
    j["chains"] = chains;
    return j;
}

DeploymentDescriptor deployment_from_json(const nlohmann::json& j)
{
    DeploymentDescriptor dep;
    try
    {
        dep.service_operator_id = j.at("service_operator_id").get<std::string>();
        for (const auto& [alias, b64] :
             j.at("trust_store").items())
        {
            dep.trust_store.add(
                alias, decode_certificate(
                           base64_decode(b64.get<std::string>())));
        }
        for (const auto& arr : j.at("chains"))
        {
            CertificateChain chain;
            for (const auto& b64 : arr)
                chain.push_back(decode_certificate(
                    base64_decode(b64.get<std::string>())));
            dep.chains.push_back(std::move(chain));
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw SimError(Err::ConfigError,
                       std::string("bad deployment fixture: ") + e.what());
    }
    return dep;
}

DeploymentDescriptor load_deployment(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SimError(Err::ConfigError, "cannot open fixture " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw SimError(Err::ConfigError,
                       "cannot parse fixture " + path + ": " + e.what());
    }
    return deployment_from_json(j);
}

} // namespace sharesim
