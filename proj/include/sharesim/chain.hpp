// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/certificate.hpp"

#include <string>
#include <vector>

namespace sharesim
{

// Leaf first, root last. Chains longer than 4 certificates are rejected
// outright (ParameterError), as is an empty chain.
using CertificateChain = std::vector<Certificate>;

constexpr std::size_t k_max_chain_len = 4;

enum class ChainStatus
{
    Ok,
    BadSignature,
    UsageViolation,
    UnknownRoot,
    Expired,
};

const char* chain_status_name(ChainStatus s);

struct ChainResult
{
    ChainStatus status = ChainStatus::Ok;
    std::string detail;

    bool ok() const
    {
        return status == ChainStatus::Ok;
    }
};

// Validation phases, each sweeping leaf to root, first failure wins:
//   1. every certificate's signature verifies under its issuer's key (the
//      root under its own), and issuer/subject ids link up   -> BadSignature
//   2. every non-leaf certificate carries certificate_signing -> UsageViolation
//   3. the root matches a trust store entry byte-for-byte     -> UnknownRoot
//   4. `now` falls inside every certificate's validity window -> Expired
ChainResult validate_chain(const CertificateChain& chain,
                           const TrustStore& roots, std::int64_t now);

} // namespace sharesim
