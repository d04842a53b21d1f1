// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/certificate.hpp"
#include "sharesim/encoding.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

std::string usage_names(KeyUsageMask mask)
{
    std::string out;
    auto append = [&](KeyUsage u, const char* name) {
        if (!has_usage(mask, u))
            return;
        if (!out.empty())
            out += '|';
        out += name;
    };
    append(KeyUsage::certificate_signing, "certificate_signing");
    append(KeyUsage::digital_signature, "digital_signature");
    append(KeyUsage::key_encipherment, "key_encipherment");
    if (out.empty())
        out = "none";
    return out;
}

Bytes certificate_tbs(const Certificate& cert)
{
    ByteWriter w;
    w.str(cert.subject_id);
    w.field(encode_public_key(cert.subject_pub));
    w.str(cert.issuer_id);
    w.u8(cert.key_usage);
    w.i64(cert.validity.not_before);
    w.i64(cert.validity.not_after);
    w.str(cert.algorithm_name);
    return w.take();
}

Bytes encode_certificate(const Certificate& cert)
{
    ByteWriter w;
    w.raw(certificate_tbs(cert));
    w.field(cert.signature);
    return w.take();
}

Certificate decode_certificate(ByteView encoded)
{
    ByteReader r(encoded);
    Certificate cert;
    cert.subject_id = r.str();
    Bytes pub = r.field();
    cert.subject_pub = decode_public_key(pub);
    cert.issuer_id = r.str();
    cert.key_usage = r.u8();
    cert.validity.not_before = r.i64();
    cert.validity.not_after = r.i64();
    cert.algorithm_name = r.str();
    cert.signature = r.field();
    r.expect_done();
    return cert;
}

bool same_certificate(const Certificate& a, const Certificate& b)
{
    return encode_certificate(a) == encode_certificate(b);
}

bool verify_certificate(const Certificate& cert, const PublicKey& issuer_pub)
{
    return verify_signature(issuer_pub, certificate_tbs(cert),
                            cert.signature);
}

bool Certificate::is_self_signed() const
{
    return subject_id == issuer_id && verify_certificate(*this, subject_pub);
}

Certificate issue_certificate(const Certificate& issuer_cert,
                              const PrivateKey& issuer_priv,
                              const std::string& subject_id,
                              const PublicKey& subject_pub,
                              KeyUsageMask key_usage, Validity validity,
                              const std::string& algorithm_name)
{
    if (!has_usage(issuer_cert.key_usage, KeyUsage::certificate_signing))
        throw SimError(Err::UsageViolation,
                       "issuer '" + issuer_cert.subject_id +
                           "' lacks certificate_signing usage");
    if (!(issuer_cert.subject_pub ==
          PublicKey{issuer_priv.n, issuer_priv.e}))
        throw SimError(Err::ParameterError,
                       "private key does not match issuer certificate");

    Certificate cert;
    cert.subject_id = subject_id;
    cert.subject_pub = subject_pub;
    cert.issuer_id = issuer_cert.subject_id;
    cert.key_usage = key_usage;
    cert.validity = validity;
    cert.algorithm_name = algorithm_name;
    cert.signature = sign_message(issuer_priv, certificate_tbs(cert));
    return cert;
}

Certificate self_sign_root(const std::string& identity, const KeyPair& kp,
                           Validity validity,
                           const std::string& algorithm_name)
{
    Certificate cert;
    cert.subject_id = identity;
    cert.subject_pub = kp.pub;
    cert.issuer_id = identity;
    cert.key_usage =
        usage(KeyUsage::certificate_signing, KeyUsage::digital_signature);
    cert.validity = validity;
    cert.algorithm_name = algorithm_name;
    cert.signature = sign_message(kp.priv, certificate_tbs(cert));
    return cert;
}

CaIdentity CaIdentity::create(const std::string& identity, unsigned bits,
                              DetRng& rng, Validity validity,
                              const std::string& algorithm_name)
{
    CaIdentity ca;
    ca.keys = generate_keypair(bits, rng);
    ca.cert = self_sign_root(identity, ca.keys, validity, algorithm_name);
    return ca;
}

Certificate CaIdentity::issue(const std::string& subject_id,
                              const PublicKey& subject_pub,
                              KeyUsageMask key_usage, Validity validity,
                              const std::string& algorithm_name) const
{
    return issue_certificate(cert, keys.priv, subject_id, subject_pub,
                             key_usage, validity, algorithm_name);
}

void TrustStore::add(const std::string& alias, const Certificate& cert)
{
    if (m_roots.count(alias))
        throw SimError(Err::ParameterError,
                       "duplicate trust store alias '" + alias + "'");
    if (!cert.is_self_signed())
        throw SimError(Err::ParameterError,
                       "trust store entry '" + alias + "' is not self-signed");
    if (!has_usage(cert.key_usage, KeyUsage::certificate_signing))
        throw SimError(Err::UsageViolation,
                       "trust store entry '" + alias +
                           "' lacks certificate_signing usage");
    m_roots.emplace(alias, cert);
}

bool TrustStore::contains_exact(const Certificate& cert) const
{
    Bytes needle = encode_certificate(cert);
    for (const auto& [alias, root] : m_roots)
    {
        if (encode_certificate(root) == needle)
            return true;
    }
    return false;
}

const Certificate* TrustStore::find_by_subject(
    const std::string& subject_id) const
{
    for (const auto& [alias, root] : m_roots)
    {
        if (root.subject_id == subject_id)
            return &root;
    }
    return nullptr;
}

} // namespace sharesim
