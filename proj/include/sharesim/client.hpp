// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/chain.hpp"
#include "sharesim/cloud_server.hpp"

#include <map>
#include <optional>
#include <variant>

namespace sharesim
{

// How a client decides whether a peer certificate really belongs to the peer.
//
//   TrustServerDirectory  believe whatever chains to the provider's root
//   ChainToExternalRoot   require a chain to an external (non-provider) CA
//   PinnedFingerprint     require a fingerprint pinned out of band
//   InvitationSecret      accept, but demand a MAC over the envelope keyed
//                         with an out-of-band shared secret (detection)
struct TrustServerDirectoryPolicy
{
};
struct ChainToExternalRootPolicy
{
    TrustStore roots;
};
struct PinnedFingerprintPolicy
{
};
struct InvitationSecretPolicy
{
    Bytes secret;
};
using VerificationPolicy =
    std::variant<TrustServerDirectoryPolicy, ChainToExternalRootPolicy,
                 PinnedFingerprintPolicy, InvitationSecretPolicy>;

enum class PolicyKind
{
    TrustServerDirectory,
    ChainToExternalRoot,
    PinnedFingerprint,
    InvitationSecret,
};

PolicyKind policy_kind(const VerificationPolicy& policy);
const char* policy_kind_name(PolicyKind kind);

enum class RejectReason
{
    UnknownRoot,
    BadSignature,
    UsageViolation,
    Expired,
    FingerprintMismatch,
    NotPinned,
    SecretTagMismatch,
    SenderSignatureInvalid,
    NotARecipient,
    IntegrityError,
    BadPassword,
    UnknownLink,
};

const char* reject_reason_name(RejectReason r);

struct PeerCheck
{
    bool accepted = false;
    std::optional<RejectReason> reason;
};

struct ShareInvitation
{
    std::string delivery_id;
    std::string sender_id;
    EncryptedEnvelope envelope;
    Certificate sender_certificate;
    std::optional<Bytes> secret_tag;
};

struct ShareOutcome
{
    std::optional<DeliveryReceipt> receipt;
    std::optional<RejectReason> rejected;
};

struct AcceptOutcome
{
    std::optional<Bytes> plaintext;
    std::optional<RejectReason> rejected;
};

struct PrivateLink
{
    std::string token;
    SymmetricKey embedded_key;
    bool password_gated = false;
};

struct RedeemResult
{
    std::optional<Bytes> plaintext;
    std::optional<RejectReason> rejected;
};

// Group state the owner keeps client-side: the record, the current content
// key, and the member keys it verified when it built the group.
struct GroupHandle
{
    ShareRecord record;
    SymmetricKey content_key;
    std::map<std::string, PublicKey> member_pubs;
};

struct GroupCreateOutcome
{
    std::optional<GroupHandle> group;
    std::optional<RejectReason> rejected;
};

enum class EnrollmentStyle
{
    ClientKey,       // client generates its own keypair
    ServerGenerated, // provider mints and hands the pair over
};

class ClientAgent
{
  public:
    // Registers with the server and materializes the policy state. A
    // ChainToExternalRoot policy needs `external_ca` to issue the client's
    // certificate (ConfigError if missing); other policies enroll under the
    // provider's root.
    static ClientAgent enroll(const std::string& user_id,
                              VerificationPolicy policy, CloudServer& server,
                              DetRng rng,
                              EnrollmentStyle style = EnrollmentStyle::ClientKey,
                              const CaIdentity* external_ca = nullptr);

    const std::string& user_id() const
    {
        return m_user_id;
    }

    const Certificate& certificate() const
    {
        return m_cert;
    }

    const KeyPair& keys() const
    {
        return m_keys;
    }

    Fingerprint fingerprint() const
    {
        return key_fingerprint(m_keys.pub);
    }

    PolicyKind policy() const
    {
        return policy_kind(m_policy);
    }

    void set_event_sink(EventSink sink)
    {
        m_sink = std::move(sink);
    }

    // Seals to self and stores; returns the blob id.
    std::string upload(ByteView plaintext, CloudServer& server);

    PeerCheck verify_peer(const Certificate& peer_cert,
                          const std::string& expected_id) const;

    // The full sender-side flow: look the target up, verify the returned
    // certificate under the policy, seal, and hand the envelope to the
    // provider for delivery. A policy rejection aborts before any envelope
    // exists.
    ShareOutcome share_with(const std::string& target_id, ByteView plaintext,
                            CloudServer& server);

    // Recipient-side flow: policy-check the sender material attached to the
    // invitation, then verify the signature, unwrap, and open.
    AcceptOutcome accept_share(const ShareInvitation& invitation);

    // Both sides pin each other's real fingerprint over a channel the
    // provider cannot touch. Idempotent.
    static void oob_exchange(ClientAgent& a, ClientAgent& b);

    void pin_fingerprint(const std::string& peer_id, const Fingerprint& fp);

    // Share links. The content key ends up embedded in the link token the
    // provider stores, so the provider can read regardless of the password.
    PrivateLink create_share_link(const std::string& blob_id,
                                  const std::optional<std::string>& password,
                                  CloudServer& server);

    // Anyone holding the link may redeem it; no enrollment involved.
    static RedeemResult redeem_link(const PrivateLink& link,
                                    const std::optional<std::string>& password,
                                    CloudServer& server);

    // Public folder/group publication: content sealed under a fresh key that
    // is then parked with the provider for anyone to use.
    PublicShareRecord publish_public(const std::string& kind, ByteView plaintext,
                                     CloudServer& server);

    // Read a public share as any registered user (or none of them: the
    // provider can run the same steps itself).
    AcceptOutcome read_public(const std::string& share_id,
                              CloudServer& server);

    GroupCreateOutcome create_group(const std::set<std::string>& member_ids,
                                    CloudServer& server);

    // Seals content under the group key to every current member and delivers
    // to each of them (except self).
    ShareOutcome share_to_group(const GroupHandle& group, ByteView plaintext,
                                CloudServer& server);

    // Membership changes rotate the content key; removed members keep the old
    // key but never see anything sealed after the rotation.
    GroupCreateOutcome add_member(const GroupHandle& group,
                                  const std::string& member_id,
                                  CloudServer& server);
    GroupHandle remove_member(const GroupHandle& group,
                              const std::string& member_id,
                              CloudServer& server);

    ShareInvitation to_invitation(const InboxItem& item) const;

  private:
    ClientAgent(std::string user_id, VerificationPolicy policy, DetRng rng);

    void emit(std::string_view action, ByteView payload) const;
    PeerCheck check_against_store(const Certificate& peer_cert,
                                  const TrustStore& roots) const;
    GroupCreateOutcome build_group(const std::set<std::string>& member_ids,
                                   const std::string& existing_share_id,
                                   CloudServer& server);

    std::string m_user_id;
    VerificationPolicy m_policy;
    DetRng m_rng;
    KeyPair m_keys;
    Certificate m_cert;
    TrustStore m_provider_anchor; // the provider root, for directory policy
    std::map<std::string, Fingerprint> m_pinned;
    std::int64_t m_now = 1;
    EventSink m_sink;
};

} // namespace sharesim
