// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Release gate. Each test case checks one acceptance criterion end to end
// and prints exactly one "[acceptance] C<n> <name>: PASS|FAIL" line, so the
// full verdict is readable straight off the test log.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharesim/audit.hpp"
#include "sharesim/audit_fixtures.hpp"
#include "sharesim/error.hpp"
#include "sharesim/report.hpp"
#include "sharesim/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace sharesim;

namespace
{

bool report(int n, const char* name, bool ok)
{
    std::printf("[acceptance] C%d %s: %s\n", n, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return {};
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

// True when `expected` appears in order (not necessarily contiguously)
// within the transcript, matching both actor and action.
bool has_subsequence(const Transcript& t,
                     const std::vector<std::pair<Actor, std::string>>& expected)
{
    std::size_t want = 0;
    for (const TranscriptEvent& e : t)
    {
        if (want < expected.size() && e.actor == expected[want].first &&
            e.action == expected[want].second)
            ++want;
    }
    return want == expected.size();
}

const std::string k_fixtures = SHARESIM_FIXTURE_DIR;

} // namespace

TEST_CASE("C1: the difficulty matrix labels every sharing kind correctly")
{
    auto start = std::chrono::steady_clock::now();
    MatrixReport m = run_matrix(42);
    double elapsed = seconds_since(start);

    const std::map<SharingKind, bool> expected = {
        {SharingKind::PublicWebLink, true},
        {SharingKind::PrivateWebLink, true},
        {SharingKind::PublicFolder, true},
        {SharingKind::PrivateFolder, false},
        {SharingKind::PublicGroup, true},
        {SharingKind::PrivateGroup, false},
    };

    bool ok = m.trivial == expected;
    ok = ok && m.cells.size() == 48;
    ok = ok && elapsed < 10.0;

    CHECK(m.trivial == expected);
    CHECK(m.cells.size() == 48);
    CHECK(elapsed < 10.0);
    CHECK(report(1, "difficulty-matrix", ok));
}

TEST_CASE("C2: the interception transcript replays all eight steps and "
          "matches the golden reports")
{
    Scenario sc = make_scenario(SharingKind::PrivateFolder,
                                PolicyKind::TrustServerDirectory,
                                ServerMode::MaliciousMitm, 42);
    RunResult rr = run_attack_scenario(sc);

    const std::vector<std::pair<Actor, std::string>> steps = {
        {Actor::UserA, std::string(ev::signup)},
        {Actor::UserA, std::string(ev::share_request)},
        {Actor::Provider, std::string(ev::lookup_response)},
        {Actor::Provider, std::string(ev::key_substitution)},
        {Actor::UserA, std::string(ev::encrypt_data)},
        {Actor::Provider, std::string(ev::provider_decrypt)},
        {Actor::Provider, std::string(ev::reencrypt_forward)},
        {Actor::UserB, std::string(ev::decrypt_share)},
    };

    bool ok = has_subsequence(rr.transcript, steps);
    ok = ok && rr.outcome.kind == OutcomeKind::BreachUndetected;
    ok = ok && rr.breach_log.size() == 1 &&
         rr.breach_log[0].plaintext_digest == sha256(sc.plaintext_marker);
    ok = ok && rr.marker_digest == sha256(sc.plaintext_marker);

    CHECK(has_subsequence(rr.transcript, steps));
    CHECK(rr.outcome.kind == OutcomeKind::BreachUndetected);
    REQUIRE(rr.breach_log.size() == 1);
    CHECK(rr.breach_log[0].plaintext_digest == sha256(sc.plaintext_marker));

    for (std::uint64_t seed : {42ULL, 43ULL, 44ULL})
    {
        Scenario g = make_scenario(SharingKind::PrivateFolder,
                                   PolicyKind::TrustServerDirectory,
                                   ServerMode::MaliciousMitm, seed);
        std::string produced =
            canonical_dump(attack_report_json(g, run_attack_scenario(g)));
        std::string frozen =
            slurp(k_fixtures + "/golden/attack-private-folder-mitm-seed" +
                  std::to_string(seed) + ".json");
        CAPTURE(seed);
        bool match = !frozen.empty() && produced == frozen;
        CHECK(match);
        ok = ok && match;
    }

    CHECK(report(2, "mitm-transcript-fidelity", ok));
}

TEST_CASE("C3: under directory trust, a full interception is invisible to "
          "both parties across 100 seeds")
{
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
    {
        RunResult honest = run_attack_scenario(
            make_scenario(SharingKind::PrivateFolder,
                          PolicyKind::TrustServerDirectory,
                          ServerMode::Honest, seed));
        RunResult attacked = run_attack_scenario(
            make_scenario(SharingKind::PrivateFolder,
                          PolicyKind::TrustServerDirectory,
                          ServerMode::MaliciousMitm, seed));

        bool verdicts_match =
            honest.recipient_verdict.has_value() &&
            attacked.recipient_verdict.has_value() &&
            verdict_code(*honest.recipient_verdict) ==
                verdict_code(*attacked.recipient_verdict);
        bool breached = !attacked.breach_log.empty() &&
                        attacked.outcome.kind == OutcomeKind::BreachUndetected &&
                        honest.outcome.kind == OutcomeKind::SecureShare;
        if (verdicts_match && breached)
            ++good;
        else
        {
            CAPTURE(seed);
            CHECK(verdicts_match);
            CHECK(breached);
        }
    }
    CHECK(good == 100);
    CHECK(report(3, "indistinguishable-compromise", good == 100));
}

TEST_CASE("C4: every mitigation policy defeats the interception across 100 "
          "seeds")
{
    struct PolicyExpectation
    {
        PolicyKind policy;
        bool breach_must_be_empty; // prevention vs detection
    };
    const PolicyExpectation policies[] = {
        {PolicyKind::ChainToExternalRoot, true},
        {PolicyKind::PinnedFingerprint, true},
        {PolicyKind::InvitationSecret, false},
    };

    int good = 0;
    const int total = 3 * 100;
    for (const PolicyExpectation& pe : policies)
    {
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
        {
            RunResult attacked = run_attack_scenario(
                make_scenario(SharingKind::PrivateFolder, pe.policy,
                              ServerMode::MaliciousMitm, seed));
            RunResult honest = run_attack_scenario(
                make_scenario(SharingKind::PrivateFolder, pe.policy,
                              ServerMode::Honest, seed));

            bool defended =
                attacked.outcome.kind == OutcomeKind::AttackDetected;
            if (pe.breach_must_be_empty)
                defended = defended && attacked.breach_log.empty();
            else
                defended = defended && !attacked.breach_log.empty();
            bool usable = honest.outcome.kind == OutcomeKind::SecureShare &&
                          honest.breach_log.empty();

            if (defended && usable)
                ++good;
            else
            {
                CAPTURE(policy_kind_name(pe.policy));
                CAPTURE(seed);
                CHECK(defended);
                CHECK(usable);
            }
        }
    }
    CHECK(good == total);
    CHECK(report(4, "mitigation-policies", good == total));
}

TEST_CASE("C5: the deployment audit classifies the reference arrangements "
          "and its verdicts are constructive")
{
    DeploymentFixture wuala = make_wuala_like_deployment();
    DeploymentFixture spideroak = make_spideroak_like_deployment();
    DeploymentFixture tresorit = make_tresorit_like_deployment();
    DeploymentFixture third = make_third_party_only_deployment();

    bool ok = audit_deployment(wuala.desc).classification ==
              DeploymentClass::ProviderAsRootCA;
    ok = ok && audit_deployment(spideroak.desc).classification ==
                   DeploymentClass::ProviderAsRootCA;
    ok = ok && audit_deployment(tresorit.desc).classification ==
                   DeploymentClass::ProviderAsIntermediateCA;
    ok = ok && audit_deployment(third.desc).classification ==
                   DeploymentClass::ThirdPartyOnly;

    CHECK(audit_deployment(wuala.desc).classification ==
          DeploymentClass::ProviderAsRootCA);
    CHECK(audit_deployment(spideroak.desc).classification ==
          DeploymentClass::ProviderAsRootCA);
    CHECK(audit_deployment(tresorit.desc).classification ==
          DeploymentClass::ProviderAsIntermediateCA);
    CHECK(audit_deployment(third.desc).classification ==
          DeploymentClass::ThirdPartyOnly);

    // Constructive check, root case: the operator's issuing root really can
    // mint a certificate for anyone, and the deployment's own anchors accept
    // the forgery.
    {
        const Certificate* issuing_root =
            wuala.desc.trust_store.find_by_subject("CN=Wuala CA, OU=Wuala");
        REQUIRE(issuing_root != nullptr);
        const KeyPair& root_keys = wuala.keys.at("CN=Wuala CA, OU=Wuala");
        DetRng rng(424242, "counterfeit-victim");
        KeyPair victim = generate_keypair(512, rng);
        Certificate forged = issue_certificate(
            *issuing_root, root_keys.priv, "CN=victim, OU=Wuala Users",
            victim.pub,
            usage(KeyUsage::digital_signature, KeyUsage::key_encipherment),
            Validity{}, "SHA1withRSA");
        ChainResult verdict = validate_chain({forged, *issuing_root},
                                             wuala.desc.trust_store, 1);
        CHECK(verdict.ok());
        ok = ok && verdict.ok();
    }

    // Constructive check, intermediate case: the operator-held intermediate
    // key mints a leaf that chains through the third-party anchor.
    {
        REQUIRE(tresorit.desc.chains.size() == 1);
        REQUIRE(tresorit.desc.chains[0].size() == 3);
        const Certificate& inter = tresorit.desc.chains[0][1];
        const Certificate& anchor = tresorit.desc.chains[0][2];
        const KeyPair& inter_keys =
            tresorit.keys.at("CN=Tresorit User CA, O=Tresorit");
        DetRng rng(424243, "counterfeit-victim");
        KeyPair victim = generate_keypair(512, rng);
        Certificate forged = issue_certificate(
            inter, inter_keys.priv, "CN=victim@tresorit.example", victim.pub,
            usage(KeyUsage::digital_signature, KeyUsage::key_encipherment),
            Validity{});
        ChainResult verdict = validate_chain({forged, inter, anchor},
                                             tresorit.desc.trust_store, 1);
        CHECK(verdict.ok());
        ok = ok && verdict.ok();
    }

    // Negative check: in the third-party-only arrangement an impostor root
    // bearing the operator's name convinces nobody.
    {
        DetRng rng(424244, "impostor");
        KeyPair impostor = generate_keypair(512, rng);
        Certificate fake_root = self_sign_root("CN=Acme Drive CA, O=Acme Drive",
                                               impostor, Validity{});
        DetRng vr(424245, "impostor-victim");
        KeyPair victim = generate_keypair(512, vr);
        Certificate forged = issue_certificate(
            fake_root, impostor.priv, "CN=victim", victim.pub,
            usage(KeyUsage::digital_signature, KeyUsage::key_encipherment),
            Validity{});
        ChainResult verdict = validate_chain({forged, fake_root},
                                             third.desc.trust_store, 1);
        CHECK(!verdict.ok());
        CHECK(verdict.status == ChainStatus::UnknownRoot);
        ok = ok && verdict.status == ChainStatus::UnknownRoot;
    }

    CHECK(report(5, "ca-deployment-audit", ok));
}

TEST_CASE("C6: an honest provider's stored state never contains or unlocks "
          "shared content")
{
    int snapshot_hits = 0;
    int unwrap_successes = 0;
    int runs = 0;

    for (SharingKind kind : k_all_sharing_kinds)
    {
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
        {
            Scenario sc = make_scenario(kind, PolicyKind::TrustServerDirectory,
                                        ServerMode::Honest, seed);
            RunResult rr = run_attack_scenario(sc);
            ++runs;

            // The marker must not appear in the provider's persistent state
            // in any of the encodings the state uses.
            const std::string raw = bytes_str(sc.plaintext_marker);
            const std::string b64 = base64_encode(sc.plaintext_marker);
            const std::string hex = to_hex(sc.plaintext_marker);
            if (rr.server_snapshot.find(raw) != std::string::npos ||
                rr.server_snapshot.find(b64) != std::string::npos ||
                rr.server_snapshot.find(hex) != std::string::npos)
            {
                ++snapshot_hits;
                CAPTURE(sharing_kind_name(kind));
                CAPTURE(seed);
                CHECK(false);
            }

            // Brute force: every private key the provider holds against
            // every recipient entry of every stored envelope. An honest
            // provider should strike out on all of them.
            for (const KeyPair& held : rr.server_held_keys)
            {
                for (const EncryptedEnvelope& env : rr.stored_envelopes)
                {
                    for (const auto& [who, wrapped] : env.wrapped_keys)
                    {
                        (void)who;
                        try
                        {
                            Bytes out = unwrap_key(held.priv, wrapped);
                            (void)out;
                            ++unwrap_successes;
                        }
                        catch (const SimError&)
                        {
                            // expected: the provider's keys do not fit
                        }
                    }
                }
            }
        }
    }

    bool ok = snapshot_hits == 0 && unwrap_successes == 0 && runs == 600;
    CHECK(snapshot_hits == 0);
    CHECK(unwrap_successes == 0);
    CHECK(runs == 600);
    CHECK(report(6, "honest-provider-confidentiality", ok));
}

TEST_CASE("C7: cryptographic properties hold under systematic perturbation")
{
    auto start = std::chrono::steady_clock::now();
    bool ok = true;

    // Property 1: recipient-set exactness for every subset of five parties.
    {
        DetRng rng(31337, "prop-recipients");
        KeyPair sender = generate_keypair(512, rng);
        struct Party
        {
            std::string id;
            KeyPair keys;
        };
        std::vector<Party> parties;
        for (int i = 0; i < 5; ++i)
            parties.push_back(
                {"party-" + std::to_string(i), generate_keypair(512, rng)});
        Bytes msg = str_bytes("subset-addressed message");

        for (unsigned mask = 1; mask < (1u << 5); ++mask)
        {
            std::vector<Recipient> recips;
            for (int i = 0; i < 5; ++i)
                if (mask & (1u << i))
                    recips.push_back({parties[i].id, parties[i].keys.pub});
            EncryptedEnvelope env =
                seal_envelope("sender", sender.priv, msg, recips, rng);

            for (int i = 0; i < 5; ++i)
            {
                bool member = (mask & (1u << i)) != 0;
                if (member)
                {
                    Bytes got = open_envelope(parties[i].keys.priv,
                                              parties[i].id, env, sender.pub);
                    if (got != msg)
                        ok = false;
                }
                else
                {
                    bool rejected = false;
                    try
                    {
                        open_envelope(parties[i].keys.priv, parties[i].id, env,
                                      sender.pub);
                    }
                    catch (const SimError& e)
                    {
                        rejected = e.code() == Err::NotARecipient;
                    }
                    if (!rejected)
                        ok = false;
                }
            }
        }
        CHECK(ok);
    }

    // Property 2: every single-bit flip anywhere in a sealed blob is caught.
    {
        DetRng rng(31338, "prop-tamper");
        SymmetricKey key = SymmetricKey::random(rng);
        Bytes msg = str_bytes("sixteen byte msg");
        SealedBlob blob = sym_seal(key, msg, rng);

        auto flip_and_check = [&](SealedBlob mutated) {
            try
            {
                Bytes out = sym_open(key, mutated);
                return out != msg; // silent corruption would also be a fail
            }
            catch (const SimError& e)
            {
                return e.code() == Err::IntegrityError;
            }
        };

        int bad = 0;
        for (std::size_t bit = 0; bit < blob.nonce.size() * 8; ++bit)
        {
            SealedBlob m = blob;
            m.nonce[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            if (!flip_and_check(m))
                ++bad;
        }
        for (std::size_t bit = 0; bit < blob.ciphertext.size() * 8; ++bit)
        {
            SealedBlob m = blob;
            m.ciphertext[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            if (!flip_and_check(m))
                ++bad;
        }
        for (std::size_t bit = 0; bit < blob.tag.size() * 8; ++bit)
        {
            SealedBlob m = blob;
            m.tag[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            if (!flip_and_check(m))
                ++bad;
        }

        // And through the canonical encoding: a flip may break decoding or
        // open; it must never yield the plaintext.
        Bytes enc = encode_sealed_blob(blob);
        for (std::size_t bit = 0; bit < enc.size() * 8; ++bit)
        {
            Bytes m = enc;
            m[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            try
            {
                if (sym_open(key, decode_sealed_blob(m)) == msg)
                    ++bad;
            }
            catch (const SimError&)
            {
            }
        }

        CHECK(bad == 0);
        ok = ok && bad == 0;
    }

    // Property 3: any single-field mutation anywhere in a certificate chain
    // invalidates it.
    {
        DetRng rng(31339, "prop-chain");
        CaIdentity root = CaIdentity::create("Fuzz Root CA", 512, rng);
        KeyPair inter_keys = generate_keypair(512, rng);
        Certificate inter =
            root.issue("Fuzz Issuing CA", inter_keys.pub,
                       usage(KeyUsage::certificate_signing));
        KeyPair leaf_keys = generate_keypair(512, rng);
        Certificate leaf = issue_certificate(
            inter, inter_keys.priv, "fuzz-user", leaf_keys.pub,
            usage(KeyUsage::digital_signature, KeyUsage::key_encipherment),
            Validity{});
        const CertificateChain chain = {leaf, inter, root.cert};
        TrustStore roots;
        roots.add("root", root.cert);
        REQUIRE(validate_chain(chain, roots, 1).ok());

        KeyPair stranger = generate_keypair(512, rng);
        int survived = 0;
        using Mutator = std::function<void(Certificate&)>;
        const std::vector<Mutator> mutators = {
            [](Certificate& c) { c.subject_id += "x"; },
            [](Certificate& c) { c.issuer_id += "x"; },
            [&](Certificate& c) { c.subject_pub = stranger.pub; },
            [](Certificate& c) { c.key_usage ^= usage(KeyUsage::certificate_signing); },
            [](Certificate& c) { c.key_usage ^= usage(KeyUsage::digital_signature); },
            [](Certificate& c) { c.validity.not_before = 500; },
            [](Certificate& c) { c.validity.not_after = 0; },
            [](Certificate& c) { c.algorithm_name += "x"; },
            [](Certificate& c) { c.signature[0] ^= 1; },
            [](Certificate& c) { c.signature.pop_back(); },
        };
        for (std::size_t pos = 0; pos < chain.size(); ++pos)
        {
            for (std::size_t mi = 0; mi < mutators.size(); ++mi)
            {
                CertificateChain mutated = chain;
                mutators[mi](mutated[pos]);
                ChainResult r = validate_chain(mutated, roots, 1);
                if (r.ok())
                {
                    ++survived;
                    CAPTURE(pos);
                    CAPTURE(mi);
                    CHECK(!r.ok());
                }
            }
        }
        CHECK(survived == 0);
        ok = ok && survived == 0;
    }

    // Property 4: the sender signature pins every recipient entry, so a
    // swapped wrap is caught even before unwrapping.
    {
        DetRng rng(31340, "prop-wrapswap");
        KeyPair sender = generate_keypair(512, rng);
        KeyPair b1 = generate_keypair(512, rng);
        KeyPair b2 = generate_keypair(512, rng);
        EncryptedEnvelope env = seal_envelope(
            "sender", sender.priv, str_bytes("pinned"),
            {{"r1", b1.pub}, {"r2", b2.pub}}, rng);
        for (const char* victim : {"r1", "r2"})
        {
            EncryptedEnvelope m = env;
            m.wrapped_keys[victim][3] ^= 0x10;
            bool caught = false;
            try
            {
                open_envelope(victim[1] == '1' ? b1.priv : b2.priv, victim, m,
                              sender.pub);
            }
            catch (const SimError& e)
            {
                caught = e.code() == Err::SenderSignatureInvalid;
            }
            CHECK(caught);
            ok = ok && caught;
        }
    }

    double elapsed = seconds_since(start);
    CHECK(elapsed < 60.0);
    ok = ok && elapsed < 60.0;

    CHECK(report(7, "crypto-properties", ok));
}
