// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/audit_fixtures.hpp"

namespace sharesim
{

namespace
{
constexpr std::uint64_t k_fixture_seed = 7301;

const KeyUsageMask k_leaf_usage =
    usage(KeyUsage::digital_signature, KeyUsage::key_encipherment);
} // namespace

DeploymentFixture make_wuala_like_deployment(unsigned bits)
{
    DetRng rng(k_fixture_seed, "fixture/wuala-like");
    DeploymentFixture fx;
    fx.desc.service_operator_id = "Wuala";

    struct RootSpec
    {
        const char* alias;
        const char* subject;
    };
    // One client bundle, four operator roots, mirroring a deployment that
    // partitions admin/server/user/client issuance across its own CAs.
    const RootSpec roots[] = {
        {"wualaadminca", "CN=Wuala Admin CA, OU=Wuala"},
        {"wualaca", "CN=Wuala CA, OU=Wuala"},
        {"wualaclientca", "CN=Wuala Client CA, OU=Wuala"},
        {"wualaserverca", "CN=Wuala Server CA, OU=Wuala"},
    };
    std::map<std::string, CaIdentity> cas;
    for (const auto& spec : roots)
    {
        DetRng r = rng.fork(spec.alias);
        CaIdentity ca =
            CaIdentity::create(spec.subject, bits, r, {}, "SHA1withRSA");
        fx.desc.trust_store.add(spec.alias, ca.cert);
        fx.keys.emplace(spec.subject, ca.keys);
        cas.emplace(spec.subject, ca);
    }

    const CaIdentity& user_ca = cas.at("CN=Wuala CA, OU=Wuala");
    DetRng ur = rng.fork("user-a");
    KeyPair user_kp = generate_keypair(bits, ur);
    Certificate user_cert =
        user_ca.issue("CN=user-a, OU=Wuala Users", user_kp.pub, k_leaf_usage,
                      {}, "SHA1withRSA");
    fx.keys.emplace(user_cert.subject_id, user_kp);
    fx.desc.chains.push_back({user_cert, user_ca.cert});
    return fx;
}

DeploymentFixture make_spideroak_like_deployment(unsigned bits)
{
    DetRng rng(k_fixture_seed, "fixture/spideroak-like");
    DeploymentFixture fx;
    fx.desc.service_operator_id = "SpiderOak";

    struct RootSpec
    {
        const char* alias;
        const char* subject;
    };
    const RootSpec externals[] = {
        {"equifax", "CN=Equifax Secure Certificate Authority, O=Equifax"},
        {"geotrust-global", "CN=GeoTrust Global CA, O=GeoTrust Inc."},
        {"geotrust-global-2", "CN=GeoTrust Global CA 2, O=GeoTrust Inc."},
        {"rapidssl", "CN=RapidSSL CA, O=GeoTrust Inc."},
    };
    for (const auto& spec : externals)
    {
        DetRng r = rng.fork(spec.alias);
        CaIdentity ca = CaIdentity::create(spec.subject, bits, r, {},
                                           "sha1WithRSAEncryption");
        fx.desc.trust_store.add(spec.alias, ca.cert);
        fx.keys.emplace(spec.subject, ca.keys);
    }

    DetRng rr = rng.fork("spideroak-root");
    CaIdentity own = CaIdentity::create(
        "emailAddress=ssl@spideroak.com, CN=SpiderOak Root CA, O=SpiderOak",
        bits, rr, {}, "sha1WithRSAEncryption");
    fx.desc.trust_store.add("spideroak-root", own.cert);
    fx.keys.emplace(own.cert.subject_id, own.keys);

    DetRng cr = rng.fork("client");
    KeyPair client_kp = generate_keypair(bits, cr);
    Certificate client_cert =
        own.issue("CN=client.spideroak.com", client_kp.pub, k_leaf_usage, {},
                  "sha1WithRSAEncryption");
    fx.keys.emplace(client_cert.subject_id, client_kp);
    fx.desc.chains.push_back({client_cert, own.cert});
    return fx;
}

DeploymentFixture make_tresorit_like_deployment(unsigned bits)
{
    DetRng rng(k_fixture_seed, "fixture/tresorit-like");
    DeploymentFixture fx;
    fx.desc.service_operator_id = "Tresorit";

    DetRng sr = rng.fork("startcom");
    CaIdentity anchor = CaIdentity::create(
        "CN=StartCom Certification Authority, O=StartCom Ltd.", bits, sr);
    fx.desc.trust_store.add("startcom", anchor.cert);
    fx.keys.emplace(anchor.cert.subject_id, anchor.keys);

    DetRng ir = rng.fork("user-ca");
    KeyPair inter_kp = generate_keypair(bits, ir);
    Certificate inter_cert = anchor.issue(
        "CN=Tresorit User CA, O=Tresorit",
        inter_kp.pub,
        usage(KeyUsage::certificate_signing, KeyUsage::digital_signature));
    fx.keys.emplace(inter_cert.subject_id, inter_kp);

    DetRng ur = rng.fork("user-a");
    KeyPair user_kp = generate_keypair(bits, ur);
    Certificate user_cert =
        issue_certificate(inter_cert, inter_kp.priv,
                          "CN=user-a@tresorit.example", user_kp.pub,
                          k_leaf_usage, {});
    fx.keys.emplace(user_cert.subject_id, user_kp);
    fx.desc.chains.push_back({user_cert, inter_cert, anchor.cert});
    return fx;
}

DeploymentFixture make_third_party_only_deployment(unsigned bits)
{
    DetRng rng(k_fixture_seed, "fixture/third-party-only");
    DeploymentFixture fx;
    fx.desc.service_operator_id = "Acme Drive";

    DetRng gr = rng.fork("globaltrust");
    CaIdentity anchor =
        CaIdentity::create("CN=GlobalTrust Root CA, O=GlobalTrust", bits, gr);
    fx.desc.trust_store.add("globaltrust", anchor.cert);
    fx.keys.emplace(anchor.cert.subject_id, anchor.keys);

    // The operator's name shows up only as a leaf subject; it issues nothing.
    DetRng sr = rng.fork("service");
    KeyPair svc_kp = generate_keypair(bits, sr);
    Certificate svc_cert = anchor.issue("CN=api.acmedrive.example, O=Acme Drive",
                                        svc_kp.pub, k_leaf_usage);
    fx.keys.emplace(svc_cert.subject_id, svc_kp);
    fx.desc.chains.push_back({svc_cert, anchor.cert});
    return fx;
}

} // namespace sharesim
