// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/chain.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace sharesim
{

// CA-capability audit over a provider deployment: who can mint certificates
// that this deployment's clients would accept? The classes are ordered by how
// directly the operator holds that power.
enum class DeploymentClass
{
    ProviderAsRootCA,         // operator controls a trust anchor that issues
    ProviderAsIntermediateCA, // operator issues under a foreign anchor
    SelfSignedRootOnly,       // operator anchors exist but never issue
    ThirdPartyOnly,           // operator holds no issuing position at all
};

const char* deployment_class_name(DeploymentClass c);

struct DeploymentDescriptor
{
    // Identity fragment naming the service operator. Matching against
    // certificate identities is by case-insensitive substring, because real
    // subjects bury the operator name in DN attributes
    // ("emailAddress=ssl@..." and the like).
    std::string service_operator_id;
    std::vector<CertificateChain> chains;
    TrustStore trust_store;
};

struct AuditFinding
{
    DeploymentClass classification = DeploymentClass::ThirdPartyOnly;
    std::vector<std::string> evidence; // never empty
};

AuditFinding audit_deployment(const DeploymentDescriptor& dep);

// Fixture format: {"service_operator_id": str,
//                  "trust_store": {alias: base64 certificate},
//                  "chains": [[base64 certificate, ...], ...]}
nlohmann::json deployment_to_json(const DeploymentDescriptor& dep);
DeploymentDescriptor deployment_from_json(const nlohmann::json& j);

// Throws ConfigError on unreadable files or unparseable JSON.
DeploymentDescriptor load_deployment(const std::string& path);

} // namespace sharesim
