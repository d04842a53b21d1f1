// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/chain.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

const char* chain_status_name(ChainStatus s)
{
    switch (s)
    {
    case ChainStatus::Ok:
        return "Ok";
    case ChainStatus::BadSignature:
        return "BadSignature";
    case ChainStatus::UsageViolation:
        return "UsageViolation";
    case ChainStatus::UnknownRoot:
        return "UnknownRoot";
    case ChainStatus::Expired:
        return "Expired";
    }
    return "Unknown";
}

ChainResult validate_chain(const CertificateChain& chain,
                           const TrustStore& roots, std::int64_t now)
{
    if (chain.empty())
        throw SimError(Err::ParameterError, "empty certificate chain");
    if (chain.size() > k_max_chain_len)
        throw SimError(Err::ParameterError, "certificate chain too long");

    std::size_t last = chain.size() - 1;

    for (std::size_t i = 0; i < chain.size(); ++i)
    {
        const Certificate& cert = chain[i];
        if (i < last)
        {
            const Certificate& issuer = chain[i + 1];
            if (cert.issuer_id != issuer.subject_id ||
                !verify_certificate(cert, issuer.subject_pub))
            {
                return {ChainStatus::BadSignature,
                        "certificate '" + cert.subject_id +
                            "' does not verify under issuer '" +
                            cert.issuer_id + "'"};
            }
        }
        else if (cert.issuer_id != cert.subject_id ||
                 !verify_certificate(cert, cert.subject_pub))
        {
            return {ChainStatus::BadSignature,
                    "root '" + cert.subject_id + "' is not self-signed"};
        }
    }

    for (std::size_t i = 1; i < chain.size(); ++i)
    {
        if (!has_usage(chain[i].key_usage, KeyUsage::certificate_signing))
        {
            return {ChainStatus::UsageViolation,
                    "issuer '" + chain[i].subject_id +
                        "' lacks certificate_signing usage"};
        }
    }

    if (!roots.contains_exact(chain.back()))
    {
        return {ChainStatus::UnknownRoot,
                "root '" + chain.back().subject_id +
                    "' is not a trust anchor"};
    }

    for (const Certificate& cert : chain)
    {
        if (!cert.validity.contains(now))
        {
            return {ChainStatus::Expired,
                    "certificate '" + cert.subject_id +
                        "' is outside its validity window"};
        }
    }

    return {ChainStatus::Ok, ""};
}

} // namespace sharesim
