// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/certificate.hpp"
#include "sharesim/envelope.hpp"
#include "sharesim/events.hpp"
#include "sharesim/hash.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace sharesim
{

enum class ServerMode
{
    Honest,
    MaliciousMitm,
};

// Which halves of the interception a malicious server performs. Full is both:
// counterfeit certificates on directory lookups, and decrypt/re-encrypt plus
// sender re-signing on delivery. The restricted scopes exist for ablation.
enum class MitmScope
{
    Full,
    LookupOnly,
    DeliveryOnly,
};

const char* server_mode_name(ServerMode m);
const char* mitm_scope_name(MitmScope s);

// How a registering user's keys and certificate come to exist.
struct EnrollClientKey
{
    PublicKey pub; // client generated its own keypair
};
struct EnrollServerGenerated
{
    // server mints the keypair and hands it back
};
struct EnrollExternalCert
{
    Certificate cert; // issued by a CA outside the provider
};
using Enrollment =
    std::variant<EnrollClientKey, EnrollServerGenerated, EnrollExternalCert>;

struct RegistrationResult
{
    Certificate certificate;
    std::optional<KeyPair> generated; // only for EnrollServerGenerated
};

struct DirectoryEntry
{
    std::string user_id;
    Certificate certificate;
};

enum class ShareKind
{
    PrivateFolder,
    PrivateGroup,
};

struct ShareRecord
{
    std::string share_id;
    ShareKind kind = ShareKind::PrivateFolder;
    std::string owner_id;
    std::set<std::string> member_ids;
    std::map<std::string, Bytes> wrapped_group_key; // member -> wrap
    std::uint64_t epoch = 0;
};

// Only ever created by a MaliciousMitm server, at the moment it recovers
// plaintext it was never meant to read. Stores a digest, not the plaintext:
// the breach log is evidence for the harness, not a second copy of the data.
struct BreachRecord
{
    std::int64_t when = 0;
    std::string victim_sender;
    std::string victim_recipient;
    Digest32 plaintext_digest{};
};

struct StoredBlob
{
    std::string blob_id;
    std::string owner_id;
    EncryptedEnvelope envelope;
};

struct LinkRecord
{
    std::string token;
    std::string blob_id;
    SymmetricKey embedded_key;
    std::optional<Digest32> password_verifier;
};

// Public folders and public groups: the content key is parked server-side so
// anyone (including the server) can read. That is the feature, not a bug.
struct PublicShareRecord
{
    std::string share_id;
    std::string kind; // "public-folder" or "public-group"
    std::string owner_id;
    std::string blob_id;
    SymmetricKey content_key;
};

struct InboxItem
{
    std::string delivery_id;
    std::string sender_id;
    std::string recipient_id;
    EncryptedEnvelope envelope;
    Certificate sender_certificate;
    std::optional<Bytes> secret_tag;
};

struct DeliveryReceipt
{
    std::string delivery_id;
    std::string recipient_id;
};

// The provider. In Honest mode it stores and forwards without holding any
// user private key. In MaliciousMitm mode it additionally mints a counterfeit
// keypair+certificate per user, substitutes them into lookups and deliveries,
// and records every plaintext recovery in the breach log.
class CloudServer
{
  public:
    CloudServer(ServerMode mode, const std::string& operator_id,
                unsigned key_bits, DetRng rng,
                MitmScope scope = MitmScope::Full);

    ServerMode mode() const
    {
        return m_mode;
    }

    const std::string& operator_id() const
    {
        return m_operator_id;
    }

    unsigned key_bits() const
    {
        return m_key_bits;
    }

    const Certificate& root_certificate() const
    {
        return m_root.cert;
    }

    std::int64_t clock() const
    {
        return m_clock;
    }

    void set_event_sink(EventSink sink)
    {
        m_sink = std::move(sink);
    }

    RegistrationResult register_user(const std::string& user_id,
                                     const Enrollment& enrollment);

    // What the directory hands out when `requester` asks after `target`.
    // The malicious server substitutes its counterfeit here.
    Certificate lookup_certificate(const std::string& requester_id,
                                   const std::string& target_id);

    std::string store_blob(const std::string& owner_id,
                           const EncryptedEnvelope& env);
    const EncryptedEnvelope& fetch_blob(const std::string& requester_id,
                                        const std::string& blob_id) const;

    ShareRecord create_share(const std::string& owner_id, ShareKind kind,
                             const std::set<std::string>& member_ids,
                             const std::map<std::string, Bytes>& wrapped_group_key);

    // Membership change; bumps the epoch. The owner re-wraps a fresh group
    // key for the new member set.
    ShareRecord update_share(const std::string& owner_id,
                             const std::string& share_id,
                             const std::set<std::string>& member_ids,
                             const std::map<std::string, Bytes>& wrapped_group_key);

    const ShareRecord& get_share(const std::string& share_id) const;

    // Delivery of a sharing envelope to one recipient's inbox. This is where
    // the malicious server decrypts, logs the breach, re-encrypts under the
    // recipient's real key, and re-signs under its counterfeit of the sender.
    DeliveryReceipt deliver_share(const std::string& sender_id,
                                  const std::string& recipient_id,
                                  const EncryptedEnvelope& env,
                                  const Certificate& sender_certificate,
                                  const std::optional<Bytes>& secret_tag);

    std::vector<InboxItem> take_inbox(const std::string& user_id);

    // Share links: the URL token maps to the blob plus the embedded content
    // key (and an optional password gate the server itself verifies).
    std::string register_link(const std::string& owner_id,
                              const std::string& blob_id,
                              const SymmetricKey& embedded_key,
                              const std::optional<Digest32>& password_verifier);
    const EncryptedEnvelope&
    redeem_blob(const std::string& token,
                const std::optional<std::string>& password);
    const LinkRecord& get_link(const std::string& token) const;

    PublicShareRecord create_public_share(const std::string& owner_id,
                                          const std::string& kind,
                                          const std::string& blob_id,
                                          const SymmetricKey& content_key);
    const PublicShareRecord&
    get_public_share(const std::string& share_id) const;

    // Everything the provider could use to read content without counterfeit
    // keys: link-embedded keys and published share keys. Returns the first
    // recoverable plaintext for the blob, if any.
    std::optional<Bytes> provider_read_attempt(const std::string& blob_id);

    std::vector<BreachRecord> read_breach_log() const
    {
        return m_breach_log;
    }

    // Every private key the server holds, root included. Honest servers hold
    // exactly the root; malicious ones add their counterfeits.
    std::vector<KeyPair> held_private_keys() const;

    const std::map<std::string, StoredBlob>& blobs() const
    {
        return m_blobs;
    }

    const std::vector<std::string>& observed_link_passwords() const
    {
        return m_observed_passwords;
    }

    // Canonical JSON of the full persistent state, deterministic key order.
    nlohmann::json snapshot() const;

  private:
    struct Counterfeit
    {
        KeyPair keys;
        Certificate cert;
    };

    void emit(std::string_view action, ByteView payload) const;
    void emit(std::string_view action, const Digest32& digest) const;
    std::int64_t tick();
    const DirectoryEntry& require_user(const std::string& user_id) const;
    void record_breach(const std::string& sender, const std::string& recipient,
                       const Digest32& plaintext_digest);
    std::string next_id(const char* prefix, std::uint64_t& counter);

    ServerMode m_mode;
    MitmScope m_scope;
    std::string m_operator_id;
    unsigned m_key_bits;
    DetRng m_rng;
    CaIdentity m_root;
    std::int64_t m_clock = 0;

    std::map<std::string, DirectoryEntry> m_directory;
    std::map<std::string, Counterfeit> m_counterfeits;
    std::map<std::string, StoredBlob> m_blobs;
    std::map<std::string, ShareRecord> m_shares;
    std::map<std::string, PublicShareRecord> m_public_shares;
    std::map<std::string, LinkRecord> m_links;
    std::map<std::string, std::vector<InboxItem>> m_inboxes;
    std::vector<BreachRecord> m_breach_log;
    std::vector<std::string> m_observed_passwords;

    std::uint64_t m_blob_counter = 0;
    std::uint64_t m_share_counter = 0;
    std::uint64_t m_delivery_counter = 0;

    EventSink m_sink;
};

} // namespace sharesim
