// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/audit.hpp"

#include <map>

namespace sharesim
{

// Deterministic deployment fixtures shaped after CA arrangements observed in
// real client-side-encrypted sharing services. The descriptor is what gets
// serialized for the auditor; the key map (identity -> issuing keypair) stays
// in memory so tests can constructively mint certificates and show what each
// arrangement lets the operator do.
struct DeploymentFixture
{
    DeploymentDescriptor desc;
    std::map<std::string, KeyPair> keys;
};

// Operator ships four of its own self-signed CA roots; user certificates are
// issued by one of them. Audits as ProviderAsRootCA.
DeploymentFixture make_wuala_like_deployment(unsigned bits = k_toy_key_bits);

// Operator pins several third-party roots plus one self-signed root of its
// own, and issues client certificates under the latter. ProviderAsRootCA.
DeploymentFixture make_spideroak_like_deployment(
    unsigned bits = k_toy_key_bits);

// Operator runs an intermediate CA under a third-party anchor.
// ProviderAsIntermediateCA.
DeploymentFixture make_tresorit_like_deployment(
    unsigned bits = k_toy_key_bits);

// Operator appears only as a certificate subject, never as an issuer.
// ThirdPartyOnly.
DeploymentFixture make_third_party_only_deployment(
    unsigned bits = k_toy_key_bits);

} // namespace sharesim
