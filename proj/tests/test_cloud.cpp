// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharesim/cloud_server.hpp"
#include "sharesim/error.hpp"

using namespace sharesim;

namespace
{

CloudServer make_server(ServerMode mode, MitmScope scope = MitmScope::Full)
{
    return CloudServer(mode, "CloudCo", 512, DetRng(555, "cloud-test"), scope);
}

struct User
{
    std::string id;
    KeyPair keys;
    Certificate cert;
};

User enroll(CloudServer& server, const std::string& id, std::uint64_t seed)
{
    DetRng rng(seed, "user/" + id);
    KeyPair kp = generate_keypair(512, rng);
    RegistrationResult reg = server.register_user(id, EnrollClientKey{kp.pub});
    return User{id, kp, reg.certificate};
}

} // namespace

TEST_CASE("registration, directory, and duplicate rejection")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);

    CHECK(a.cert.subject_id == "user-a");
    CHECK(a.cert.subject_pub == a.keys.pub);
    CHECK(a.cert.issuer_id == server.root_certificate().subject_id);
    CHECK(verify_certificate(a.cert, server.root_certificate().subject_pub));

    CHECK_THROWS_WITH_AS(server.register_user("user-a",
                                              EnrollClientKey{a.keys.pub}),
                         doctest::Contains("DuplicateUser"), SimError);
    CHECK_THROWS_WITH_AS(server.lookup_certificate("user-a", "nobody"),
                         doctest::Contains("UnknownUser"), SimError);

    // Server-generated enrollment hands the pair over and keeps no copy.
    RegistrationResult gen =
        server.register_user("user-b", EnrollServerGenerated{});
    REQUIRE(gen.generated.has_value());
    CHECK(gen.certificate.subject_pub == gen.generated->pub);
    CHECK(server.held_private_keys().size() == 1); // root only, honest

    // External certificates must carry the subject's id.
    DetRng ca_rng(9, "ext-ca");
    CaIdentity ext = CaIdentity::create("Ext CA", 512, ca_rng);
    KeyPair ck = generate_keypair(512, ca_rng);
    Certificate wrong = ext.issue("someone-else", ck.pub,
                                  usage(KeyUsage::digital_signature,
                                        KeyUsage::key_encipherment));
    CHECK_THROWS_AS(server.register_user("user-c", EnrollExternalCert{wrong}),
                    SimError);
    Certificate right = ext.issue("user-c", ck.pub,
                                  usage(KeyUsage::digital_signature,
                                        KeyUsage::key_encipherment));
    CHECK(server.register_user("user-c", EnrollExternalCert{right})
              .certificate.issuer_id == "Ext CA");
}

TEST_CASE("honest lookups return the enrolled certificate unchanged")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);
    User b = enroll(server, "user-b", 2);

    Certificate seen = server.lookup_certificate(a.id, b.id);
    CHECK(same_certificate(seen, b.cert));
    CHECK(server.read_breach_log().empty());
}

TEST_CASE("malicious lookups substitute a counterfeit signed by the provider")
{
    CloudServer server = make_server(ServerMode::MaliciousMitm);
    User a = enroll(server, "user-a", 1);
    User b = enroll(server, "user-b", 2);

    Certificate seen = server.lookup_certificate(a.id, b.id);
    CHECK(seen.subject_id == "user-b");
    CHECK(!(seen.subject_pub == b.keys.pub)); // the lie
    CHECK(verify_certificate(seen, server.root_certificate().subject_pub));

    // The target itself is shown its real certificate, so self-checks pass.
    Certificate self_view = server.lookup_certificate(b.id, b.id);
    CHECK(same_certificate(self_view, b.cert));

    // Substitution is deterministic: the same counterfeit every time.
    Certificate again = server.lookup_certificate(a.id, b.id);
    CHECK(same_certificate(seen, again));

    // Root plus one counterfeit per looked-up user.
    CHECK(server.held_private_keys().size() >= 2);
}

TEST_CASE("lookup-only scope substitutes but never touches deliveries")
{
    CloudServer server = make_server(ServerMode::MaliciousMitm,
                                     MitmScope::LookupOnly);
    User a = enroll(server, "user-a", 1);
    User b = enroll(server, "user-b", 2);

    Certificate seen = server.lookup_certificate(a.id, b.id);
    CHECK(!(seen.subject_pub == b.keys.pub));

    DetRng rng(77, "seal");
    EncryptedEnvelope env = seal_envelope(a.id, a.keys.priv,
                                          str_bytes("payload"),
                                          {{b.id, seen.subject_pub}}, rng);
    server.deliver_share(a.id, b.id, env, a.cert, std::nullopt);

    auto inbox = server.take_inbox(b.id);
    REQUIRE(inbox.size() == 1);
    // Envelope passed through verbatim: still sealed to the counterfeit key,
    // so the real recipient cannot open it -- and no breach was recorded.
    CHECK(encode_envelope(inbox[0].envelope) == encode_envelope(env));
    CHECK(server.read_breach_log().empty());
    CHECK_THROWS_AS(open_envelope(b.keys.priv, b.id, inbox[0].envelope,
                                  a.keys.pub),
                    SimError);
}

TEST_CASE("full-scope delivery interception logs the breach and re-encrypts")
{
    CloudServer server = make_server(ServerMode::MaliciousMitm);
    User a = enroll(server, "user-a", 1);
    User b = enroll(server, "user-b", 2);

    Certificate counterfeit_b = server.lookup_certificate(a.id, b.id);
    Bytes secret = str_bytes("q3 revenue: zero, as always");
    DetRng rng(78, "seal");
    EncryptedEnvelope env = seal_envelope(a.id, a.keys.priv, secret,
                                          {{b.id, counterfeit_b.subject_pub}},
                                          rng);
    server.deliver_share(a.id, b.id, env, a.cert, std::nullopt);

    auto breaches = server.read_breach_log();
    REQUIRE(breaches.size() == 1);
    CHECK(breaches[0].victim_sender == "user-a");
    CHECK(breaches[0].victim_recipient == "user-b");
    CHECK(breaches[0].plaintext_digest == sha256(secret));

    auto inbox = server.take_inbox(b.id);
    REQUIRE(inbox.size() == 1);
    const InboxItem& item = inbox[0];

    // Re-encrypted under the real recipient key and re-signed under the
    // counterfeit sender, with the sender certificate swapped to match.
    CHECK(!(encode_envelope(item.envelope) == encode_envelope(env)));
    CHECK(item.sender_certificate.subject_id == "user-a");
    CHECK(!(item.sender_certificate.subject_pub == a.keys.pub));
    Bytes recovered = open_envelope(b.keys.priv, b.id, item.envelope,
                                    item.sender_certificate.subject_pub);
    CHECK(recovered == secret);

    // The signature no longer verifies as the real sender.
    CHECK(!verify_signature(a.keys.pub, envelope_signing_payload(item.envelope),
                            item.envelope.sender_signature));

    // Inbox drain is destructive.
    CHECK(server.take_inbox(b.id).empty());
}

TEST_CASE("share records: membership checks and epochs")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);
    User b = enroll(server, "user-b", 2);
    DetRng rng(79, "groups");
    SymmetricKey gk = SymmetricKey::random(rng);
    std::map<std::string, Bytes> wraps = {
        {a.id, wrap_key(a.keys.pub, gk.view(), rng)},
        {b.id, wrap_key(b.keys.pub, gk.view(), rng)},
    };

    CHECK_THROWS_WITH_AS(server.create_share("user-a", ShareKind::PrivateGroup,
                                             {"user-b"}, wraps),
                         doctest::Contains("OwnerNotMember"), SimError);
    CHECK_THROWS_WITH_AS(server.create_share("user-a", ShareKind::PrivateGroup,
                                             {"user-a", "ghost"}, wraps),
                         doctest::Contains("UnknownUser"), SimError);
    CHECK_THROWS_AS(server.create_share("user-a", ShareKind::PrivateGroup,
                                        {"user-a", "user-b"},
                                        {{a.id, wraps[a.id]}}),
                    SimError); // wrap table must cover exactly the members

    ShareRecord rec = server.create_share("user-a", ShareKind::PrivateGroup,
                                          {"user-a", "user-b"}, wraps);
    CHECK(rec.epoch == 0);
    CHECK(server.get_share(rec.share_id).member_ids.count("user-b") == 1);

    ShareRecord bumped = server.update_share(
        "user-a", rec.share_id, {"user-a"}, {{a.id, wraps[a.id]}});
    CHECK(bumped.epoch == 1);
    CHECK_THROWS_AS(server.update_share("user-b", rec.share_id, {"user-b"},
                                        {{b.id, wraps[b.id]}}),
                    SimError); // only the owner may re-key
}

TEST_CASE("links: pass-through, password gating, and password observation")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);
    DetRng rng(80, "links");
    SymmetricKey key = SymmetricKey::random(rng);
    // Seal with an explicit content key so the link can embed the same key
    // the envelope was actually encrypted under.
    EncryptedEnvelope env = seal_envelope_with_key(a.id, a.keys.priv, key,
                                                   str_bytes("linked content"),
                                                   {{a.id, a.keys.pub}}, rng);
    std::string blob_id = server.store_blob(a.id, env);
    CHECK(encode_envelope(server.fetch_blob(a.id, blob_id)) ==
          encode_envelope(env));
    CHECK_THROWS_WITH_AS(server.fetch_blob(a.id, "blob-999999"),
                         doctest::Contains("UnknownBlob"), SimError);

    std::string open_token = server.register_link(a.id, blob_id, key,
                                                  std::nullopt);
    CHECK_NOTHROW(server.redeem_blob(open_token, std::nullopt));

    Digest32 verifier = hmac_sha256(str_bytes("link-password"),
                                    str_bytes("hunter2"));
    std::string gated = server.register_link(a.id, blob_id, key, verifier);
    CHECK_THROWS_WITH_AS(server.redeem_blob(gated, std::string("wrong")),
                         doctest::Contains("BadPassword"), SimError);
    CHECK_NOTHROW(server.redeem_blob(gated, std::string("hunter2")));
    CHECK_THROWS_WITH_AS(server.redeem_blob("no-such-token", std::nullopt),
                         doctest::Contains("UnknownLink"), SimError);

    // The server sees every password attempt in the clear: gating by server
    // side verification protects nothing from the server itself.
    auto observed = server.observed_link_passwords();
    REQUIRE(observed.size() == 2);
    CHECK(observed[0] == "wrong");
    CHECK(observed[1] == "hunter2");

    // And the embedded key lets the provider read the content outright.
    auto read = server.provider_read_attempt(blob_id);
    REQUIRE(read.has_value());
    CHECK(*read == str_bytes("linked content"));
}

TEST_CASE("provider_read_attempt uses only disclosed keys, never counterfeits")
{
    CloudServer server = make_server(ServerMode::MaliciousMitm);
    User a = enroll(server, "user-a", 1);
    DetRng rng(81, "scan");
    EncryptedEnvelope env = seal_envelope(a.id, a.keys.priv,
                                          str_bytes("private notes"),
                                          {{a.id, a.keys.pub}}, rng);
    std::string blob_id = server.store_blob(a.id, env);
    CHECK(!server.provider_read_attempt(blob_id).has_value());
}

TEST_CASE("snapshots are canonical json and exclude private keys")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);
    DetRng rng(82, "snap");
    EncryptedEnvelope env = seal_envelope(a.id, a.keys.priv,
                                          str_bytes("snapshot fodder"),
                                          {{a.id, a.keys.pub}}, rng);
    server.store_blob(a.id, env);

    std::string snap1 = server.snapshot().dump(2) + "\n";
    std::string snap2 = server.snapshot().dump(2) + "\n";
    CHECK(snap1 == snap2);

    nlohmann::json doc = nlohmann::json::parse(snap1);
    for (const char* key : {"operator", "mode", "clock", "root_certificate",
                            "directory", "blobs", "shares", "public_shares",
                            "links", "inboxes", "breach_log"})
        CHECK(doc.contains(key));
    CHECK(doc["operator"] == "CloudCo");
    CHECK(doc["directory"].contains("user-a"));

    // No private exponent anywhere: neither the root's nor any user's.
    for (const KeyPair& kp : server.held_private_keys())
    {
        std::string d_hex = kp.priv.d.get_str(16);
        CHECK(snap1.find(d_hex) == std::string::npos);
    }
    std::string user_d = a.keys.priv.d.get_str(16);
    CHECK(snap1.find(user_d) == std::string::npos);
}

TEST_CASE("public shares park the content key with the provider")
{
    CloudServer server = make_server(ServerMode::Honest);
    User a = enroll(server, "user-a", 1);
    DetRng rng(83, "public");
    SymmetricKey key = SymmetricKey::random(rng);
    SealedBlob sealed = sym_seal(key, str_bytes("company wiki"), rng);
    EncryptedEnvelope env = seal_envelope(a.id, a.keys.priv,
                                          str_bytes("placeholder"),
                                          {{a.id, a.keys.pub}}, rng);
    // Public content is stored as a sealed blob addressed by the share, with
    // the key handed to the provider; model that with store + create.
    std::string blob_id = server.store_blob(a.id, env);
    PublicShareRecord rec =
        server.create_public_share(a.id, "public-folder", blob_id, key);
    CHECK(server.get_public_share(rec.share_id).owner_id == "user-a");
    CHECK(server.get_public_share(rec.share_id).content_key == key);
    CHECK_THROWS_AS(server.get_public_share("nope"), SimError);
    (void)sealed;
}
