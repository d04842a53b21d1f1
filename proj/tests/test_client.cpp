// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharesim/client.hpp"
#include "sharesim/error.hpp"

using namespace sharesim;

namespace
{

struct Rig
{
    CloudServer server;
    DetRng rng{9000, "client-test"};
    DetRng ca_rng{322, "rig-ca"};
    CaIdentity external_ca;

    explicit Rig(ServerMode mode, MitmScope scope = MitmScope::Full)
        : server(mode, "CloudCo", 512, DetRng(321, "rig-server"), scope),
          external_ca(CaIdentity::create("External Root CA", 512, ca_rng))
    {
    }

    ClientAgent user(const std::string& id, VerificationPolicy policy)
    {
        const CaIdentity* ca =
            std::holds_alternative<ChainToExternalRootPolicy>(policy)
                ? &external_ca
                : nullptr;
        return ClientAgent::enroll(id, std::move(policy), server,
                                   rng.fork("client/" + id),
                                   EnrollmentStyle::ClientKey, ca);
    }
};

ChainToExternalRootPolicy external_policy(const CaIdentity& ca)
{
    ChainToExternalRootPolicy p;
    p.roots.add("external-root", ca.cert);
    return p;
}

AcceptOutcome accept_first(ClientAgent& recipient, CloudServer& server)
{
    auto inbox = server.take_inbox(recipient.user_id());
    REQUIRE(inbox.size() == 1);
    return recipient.accept_share(recipient.to_invitation(inbox[0]));
}

const Bytes k_msg = str_bytes("minutes of the secret philately society");

} // namespace

TEST_CASE("honest end-to-end share under every policy")
{
    for (PolicyKind kind :
         {PolicyKind::TrustServerDirectory, PolicyKind::ChainToExternalRoot,
          PolicyKind::PinnedFingerprint, PolicyKind::InvitationSecret})
    {
        CAPTURE(policy_kind_name(kind));
        Rig rig(ServerMode::Honest);
        auto make_policy = [&]() -> VerificationPolicy {
            switch (kind)
            {
            case PolicyKind::TrustServerDirectory:
                return TrustServerDirectoryPolicy{};
            case PolicyKind::ChainToExternalRoot:
                return external_policy(rig.external_ca);
            case PolicyKind::PinnedFingerprint:
                return PinnedFingerprintPolicy{};
            case PolicyKind::InvitationSecret:
                return InvitationSecretPolicy{str_bytes("shared oob secret")};
            }
            return TrustServerDirectoryPolicy{};
        };
        ClientAgent a = rig.user("user-a", make_policy());
        ClientAgent b = rig.user("user-b", make_policy());
        if (kind == PolicyKind::PinnedFingerprint)
            ClientAgent::oob_exchange(a, b);

        ShareOutcome sent = a.share_with("user-b", k_msg, rig.server);
        REQUIRE(sent.receipt.has_value());
        CHECK(!sent.rejected.has_value());

        AcceptOutcome got = accept_first(b, rig.server);
        REQUIRE(got.plaintext.has_value());
        CHECK(*got.plaintext == k_msg);
        CHECK(rig.server.read_breach_log().empty());
    }
}

TEST_CASE("trust-server-directory accepts the counterfeit and loses the content")
{
    Rig rig(ServerMode::MaliciousMitm);
    ClientAgent a = rig.user("user-a", TrustServerDirectoryPolicy{});
    ClientAgent b = rig.user("user-b", TrustServerDirectoryPolicy{});

    ShareOutcome sent = a.share_with("user-b", k_msg, rig.server);
    REQUIRE(sent.receipt.has_value()); // nothing looked wrong to the sender

    AcceptOutcome got = accept_first(b, rig.server);
    REQUIRE(got.plaintext.has_value()); // nothing looked wrong to the recipient
    CHECK(*got.plaintext == k_msg);

    auto breaches = rig.server.read_breach_log();
    REQUIRE(breaches.size() == 1);
    CHECK(breaches[0].plaintext_digest == sha256(k_msg));
}

TEST_CASE("chain-to-external-root refuses the provider-signed counterfeit")
{
    Rig rig(ServerMode::MaliciousMitm);
    ClientAgent a = rig.user("user-a", external_policy(rig.external_ca));
    ClientAgent b = rig.user("user-b", external_policy(rig.external_ca));
    (void)b;

    ShareOutcome sent = a.share_with("user-b", k_msg, rig.server);
    CHECK(!sent.receipt.has_value());
    REQUIRE(sent.rejected.has_value());
    CHECK(*sent.rejected == RejectReason::UnknownRoot);
    CHECK(rig.server.read_breach_log().empty());
    CHECK(rig.server.take_inbox("user-b").empty()); // nothing was ever sent
}

TEST_CASE("pinned fingerprints refuse the counterfeit, and demand a pin")
{
    Rig rig(ServerMode::MaliciousMitm);
    ClientAgent a = rig.user("user-a", PinnedFingerprintPolicy{});
    ClientAgent b = rig.user("user-b", PinnedFingerprintPolicy{});

    // No pin yet: the policy refuses to guess.
    ShareOutcome blind = a.share_with("user-b", k_msg, rig.server);
    REQUIRE(blind.rejected.has_value());
    CHECK(*blind.rejected == RejectReason::NotPinned);

    ClientAgent::oob_exchange(a, b);
    ShareOutcome pinned = a.share_with("user-b", k_msg, rig.server);
    REQUIRE(pinned.rejected.has_value());
    CHECK(*pinned.rejected == RejectReason::FingerprintMismatch);
    CHECK(rig.server.read_breach_log().empty());
}

TEST_CASE("invitation secret detects the rewrite after the fact")
{
    Rig rig(ServerMode::MaliciousMitm);
    Bytes secret = str_bytes("whispered at the coffee machine");
    ClientAgent a = rig.user("user-a", InvitationSecretPolicy{secret});
    ClientAgent b = rig.user("user-b", InvitationSecretPolicy{secret});

    ShareOutcome sent = a.share_with("user-b", k_msg, rig.server);
    REQUIRE(sent.receipt.has_value()); // sending succeeds: detection, not prevention

    AcceptOutcome got = accept_first(b, rig.server);
    CHECK(!got.plaintext.has_value());
    REQUIRE(got.rejected.has_value());
    CHECK(*got.rejected == RejectReason::SecretTagMismatch);

    // The provider did read the content; the tag only makes that loud.
    REQUIRE(rig.server.read_breach_log().size() == 1);
    CHECK(rig.server.read_breach_log()[0].plaintext_digest == sha256(k_msg));
}

TEST_CASE("mismatched invitation secrets also refuse honest traffic")
{
    Rig rig(ServerMode::Honest);
    ClientAgent a = rig.user("user-a", InvitationSecretPolicy{str_bytes("one")});
    ClientAgent b = rig.user("user-b", InvitationSecretPolicy{str_bytes("two")});
    a.share_with("user-b", k_msg, rig.server);
    AcceptOutcome got = accept_first(b, rig.server);
    REQUIRE(got.rejected.has_value());
    CHECK(*got.rejected == RejectReason::SecretTagMismatch);
}

TEST_CASE("verify_peer rejects a certificate for somebody else")
{
    Rig rig(ServerMode::Honest);
    ClientAgent a = rig.user("user-a", TrustServerDirectoryPolicy{});
    ClientAgent b = rig.user("user-b", TrustServerDirectoryPolicy{});
    PeerCheck check = a.verify_peer(b.certificate(), "user-c");
    CHECK(!check.accepted);
    REQUIRE(check.reason.has_value());
    CHECK(*check.reason == RejectReason::FingerprintMismatch);
}

TEST_CASE("external enrollment requires the CA, and self-check catches swaps")
{
    Rig rig(ServerMode::Honest);
    CHECK_THROWS_AS(ClientAgent::enroll("user-x", external_policy(rig.external_ca),
                                        rig.server, DetRng(1, "x"),
                                        EnrollmentStyle::ClientKey, nullptr),
                    SimError);

    // Server-generated keys work too; the client keeps what it is handed.
    ClientAgent sg = ClientAgent::enroll("user-sg", TrustServerDirectoryPolicy{},
                                         rig.server, DetRng(2, "sg"),
                                         EnrollmentStyle::ServerGenerated);
    CHECK(sg.certificate().subject_pub == sg.keys().pub);
}

TEST_CASE("share links work with and without passwords, and the provider reads them")
{
    Rig rig(ServerMode::Honest);
    ClientAgent a = rig.user("user-a", TrustServerDirectoryPolicy{});
    std::string blob_id = a.upload(str_bytes("link payload"), rig.server);

    SUBCASE("open link")
    {
        PrivateLink link = a.create_share_link(blob_id, std::nullopt, rig.server);
        RedeemResult r = ClientAgent::redeem_link(link, std::nullopt, rig.server);
        REQUIRE(r.plaintext.has_value());
        CHECK(*r.plaintext == str_bytes("link payload"));
    }

    SUBCASE("password-gated link")
    {
        PrivateLink link = a.create_share_link(blob_id, std::string("s3cret"),
                                               rig.server);
        RedeemResult wrong =
            ClientAgent::redeem_link(link, std::string("nope"), rig.server);
        CHECK(!wrong.plaintext.has_value());
        REQUIRE(wrong.rejected.has_value());
        CHECK(*wrong.rejected == RejectReason::BadPassword);

        RedeemResult right =
            ClientAgent::redeem_link(link, std::string("s3cret"), rig.server);
        REQUIRE(right.plaintext.has_value());

        // Password or not, the provider holds the embedded key.
        auto provider_view = rig.server.provider_read_attempt(blob_id);
        REQUIRE(provider_view.has_value());
        CHECK(*provider_view == str_bytes("link payload"));
    }
}

TEST_CASE("public publication is readable by anyone including the provider")
{
    Rig rig(ServerMode::Honest);
    ClientAgent a = rig.user("user-a", TrustServerDirectoryPolicy{});
    ClientAgent b = rig.user("user-b", TrustServerDirectoryPolicy{});

    PublicShareRecord rec = a.publish_public("public-folder",
                                             str_bytes("read all about it"),
                                             rig.server);
    AcceptOutcome got = b.read_public(rec.share_id, rig.server);
    REQUIRE(got.plaintext.has_value());
    CHECK(*got.plaintext == str_bytes("read all about it"));

    auto provider_view = rig.server.provider_read_attempt(rec.blob_id);
    REQUIRE(provider_view.has_value());
    CHECK(*provider_view == str_bytes("read all about it"));
}

TEST_CASE("groups: creation, fan-out, and re-keying on removal")
{
    Rig rig(ServerMode::Honest);
    ClientAgent a = rig.user("user-a", TrustServerDirectoryPolicy{});
    ClientAgent b = rig.user("user-b", TrustServerDirectoryPolicy{});
    ClientAgent c = rig.user("user-c", TrustServerDirectoryPolicy{});

    GroupCreateOutcome created = a.create_group({"user-a", "user-b", "user-c"},
                                                rig.server);
    REQUIRE(created.group.has_value());
    const GroupHandle& g = *created.group;
    CHECK(g.record.member_ids.size() == 3);

    ShareOutcome fan = a.share_to_group(g, str_bytes("hello group"), rig.server);
    REQUIRE(fan.receipt.has_value());
    AcceptOutcome got_b = accept_first(b, rig.server);
    AcceptOutcome got_c = accept_first(c, rig.server);
    REQUIRE(got_b.plaintext.has_value());
    REQUIRE(got_c.plaintext.has_value());
    CHECK(*got_b.plaintext == str_bytes("hello group"));
    CHECK(*got_c.plaintext == str_bytes("hello group"));

    // Removal rotates the key: the removed member's entry simply no longer
    // exists in anything sealed afterwards.
    GroupHandle g2 = a.remove_member(g, "user-c", rig.server);
    CHECK(g2.record.epoch == g.record.epoch + 1);
    CHECK(!(g2.content_key == g.content_key));
    a.share_to_group(g2, str_bytes("c must not see this"), rig.server);

    AcceptOutcome still_b = accept_first(b, rig.server);
    REQUIRE(still_b.plaintext.has_value());
    auto c_inbox = rig.server.take_inbox("user-c");
    CHECK(c_inbox.empty());

    CHECK_THROWS_WITH_AS(a.remove_member(g2, "user-a", rig.server),
                         doctest::Contains("OwnerNotMember"), SimError);

    // Adding a member re-keys as well and the newcomer can read new posts.
    ClientAgent d = rig.user("user-d", TrustServerDirectoryPolicy{});
    GroupCreateOutcome grown = a.add_member(g2, "user-d", rig.server);
    REQUIRE(grown.group.has_value());
    a.share_to_group(*grown.group, str_bytes("welcome d"), rig.server);
    AcceptOutcome got_d = accept_first(d, rig.server);
    (void)accept_first(b, rig.server);
    REQUIRE(got_d.plaintext.has_value());
    CHECK(*got_d.plaintext == str_bytes("welcome d"));
}

TEST_CASE("group creation fails closed when a member certificate is refused")
{
    Rig rig(ServerMode::MaliciousMitm);
    ClientAgent a = rig.user("user-a", external_policy(rig.external_ca));
    ClientAgent b = rig.user("user-b", external_policy(rig.external_ca));
    (void)b;
    GroupCreateOutcome created = a.create_group({"user-a", "user-b"}, rig.server);
    CHECK(!created.group.has_value());
    REQUIRE(created.rejected.has_value());
    CHECK(*created.rejected == RejectReason::UnknownRoot);
}
