// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"
#include "sharesim/rsa.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace sharesim
{

enum class KeyUsage : std::uint8_t
{
    certificate_signing = 1,
    digital_signature = 2,
    key_encipherment = 4,
};

using KeyUsageMask = std::uint8_t;

constexpr KeyUsageMask usage(KeyUsage u)
{
    return static_cast<KeyUsageMask>(u);
}

constexpr KeyUsageMask usage(KeyUsage a, KeyUsage b)
{
    return static_cast<KeyUsageMask>(static_cast<KeyUsageMask>(a) |
                                     static_cast<KeyUsageMask>(b));
}

constexpr bool has_usage(KeyUsageMask mask, KeyUsage u)
{
    return (mask & static_cast<KeyUsageMask>(u)) != 0;
}

// "certificate_signing|digital_signature" style rendering for evidence text.
std::string usage_names(KeyUsageMask mask);

// Validity bounds are logical timestamps (the simulator has no wall clock;
// servers tick a counter). The defaults cover every logical instant a test
// will ever reach unless it is deliberately probing expiry.
struct Validity
{
    std::int64_t not_before = 0;
    std::int64_t not_after = 1000000000;

    bool contains(std::int64_t t) const
    {
        return t >= not_before && t <= not_after;
    }
};

// algorithm_name is a historical label carried for audit evidence (real
// deployments surface strings like "SHA1withRSA"); every signature in the
// simulator is the one deterministic RSA/SHA-256 scheme regardless.
struct Certificate
{
    std::string subject_id;
    PublicKey subject_pub;
    std::string issuer_id;
    KeyUsageMask key_usage = 0;
    Validity validity;
    std::string algorithm_name;
    Bytes signature;

    bool is_self_signed() const;
};

// Canonical encoding of everything the issuer signs.
Bytes certificate_tbs(const Certificate& cert);

Bytes encode_certificate(const Certificate& cert);
Certificate decode_certificate(ByteView encoded);

bool same_certificate(const Certificate& a, const Certificate& b);

bool verify_certificate(const Certificate& cert, const PublicKey& issuer_pub);

inline constexpr const char* k_default_algorithm = "SHA256withRSA";

// Throws UsageViolation if the issuer certificate lacks certificate_signing,
// ParameterError if the private key does not match the issuer certificate.
Certificate issue_certificate(const Certificate& issuer_cert,
                              const PrivateKey& issuer_priv,
                              const std::string& subject_id,
                              const PublicKey& subject_pub,
                              KeyUsageMask key_usage, Validity validity,
                              const std::string& algorithm_name =
                                  k_default_algorithm);

Certificate self_sign_root(const std::string& identity, const KeyPair& kp,
                           Validity validity,
                           const std::string& algorithm_name =
                               k_default_algorithm);

// A certificate authority the tests and fixtures can hand around: the root
// certificate plus the private key that issues under it.
struct CaIdentity
{
    Certificate cert;
    KeyPair keys;

    static CaIdentity create(const std::string& identity, unsigned bits,
                             DetRng& rng, Validity validity = {},
                             const std::string& algorithm_name =
                                 k_default_algorithm);

    Certificate issue(const std::string& subject_id,
                      const PublicKey& subject_pub, KeyUsageMask key_usage,
                      Validity validity = {},
                      const std::string& algorithm_name =
                          k_default_algorithm) const;
};

// Trust anchors keyed by alias. Every entry must be a self-signed certificate
// with certificate_signing usage; membership tests compare canonical bytes,
// so a counterfeit root with the same subject id never matches.
class TrustStore
{
  public:
    void add(const std::string& alias, const Certificate& cert);

    bool contains_exact(const Certificate& cert) const;
    const Certificate* find_by_subject(const std::string& subject_id) const;

    const std::map<std::string, Certificate>& entries() const
    {
        return m_roots;
    }

    bool empty() const
    {
        return m_roots.empty();
    }

  private:
    std::map<std::string, Certificate> m_roots;
};

} // namespace sharesim
