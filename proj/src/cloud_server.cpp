// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/cloud_server.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

const char* server_mode_name(ServerMode m)
{
    return m == ServerMode::Honest ? "honest" : "malicious-mitm";
}

const char* mitm_scope_name(MitmScope s)
{
    switch (s)
    {
    case MitmScope::Full:
        return "full";
    case MitmScope::LookupOnly:
        return "lookup-only";
    case MitmScope::DeliveryOnly:
        return "delivery-only";
    }
    return "unknown";
}

namespace
{
const KeyUsageMask k_user_usage =
    usage(KeyUsage::digital_signature, KeyUsage::key_encipherment);

Digest32 link_password_verifier(const std::string& password)
{
    return hmac_sha256(str_bytes("link-password"), str_bytes(password));
}
} // namespace

CloudServer::CloudServer(ServerMode mode, const std::string& operator_id,
                         unsigned key_bits, DetRng rng, MitmScope scope)
    : m_mode(mode),
      m_scope(scope),
      m_operator_id(operator_id),
      m_key_bits(key_bits),
      m_rng(std::move(rng))
{
    DetRng root_rng = m_rng.fork("root-ca");
    m_root = CaIdentity::create(operator_id + " Root CA", key_bits, root_rng);
}

void CloudServer::emit(std::string_view action, ByteView payload) const
{
    if (m_sink)
        m_sink(action, payload);
}

void CloudServer::emit(std::string_view action, const Digest32& digest) const
{
    emit(action, ByteView(digest.data(), digest.size()));
}

std::int64_t CloudServer::tick()
{
    return ++m_clock;
}

const DirectoryEntry&
CloudServer::require_user(const std::string& user_id) const
{
    auto it = m_directory.find(user_id);
    if (it == m_directory.end())
        throw SimError(Err::UnknownUser, "no such user '" + user_id + "'");
    return it->second;
}

void CloudServer::record_breach(const std::string& sender,
                                const std::string& recipient,
                                const Digest32& plaintext_digest)
{
    if (m_mode != ServerMode::MaliciousMitm)
        throw SimError(Err::UsageViolation,
                       "breach record on an honest server");
    m_breach_log.push_back(
        BreachRecord{m_clock, sender, recipient, plaintext_digest});
}

std::string CloudServer::next_id(const char* prefix, std::uint64_t& counter)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%06llu", prefix,
                  static_cast<unsigned long long>(++counter));
    return buf;
}

RegistrationResult CloudServer::register_user(const std::string& user_id,
                                              const Enrollment& enrollment)
{
    if (user_id.empty())
        throw SimError(Err::ParameterError, "empty user id");
    if (m_directory.count(user_id))
        throw SimError(Err::DuplicateUser,
                       "user '" + user_id + "' already registered");

    RegistrationResult result;
    if (const auto* ck = std::get_if<EnrollClientKey>(&enrollment))
    {
        result.certificate = m_root.issue(user_id, ck->pub, k_user_usage);
    }
    else if (std::get_if<EnrollServerGenerated>(&enrollment))
    {
        // The server mints the pair, hands it over, and keeps no copy: the
        // honest-server state must never contain a user's private key.
        DetRng kr = m_rng.fork("user-keys/" + user_id);
        KeyPair kp = generate_keypair(m_key_bits, kr);
        result.certificate = m_root.issue(user_id, kp.pub, k_user_usage);
        result.generated = kp;
    }
    else
    {
        const auto& ext = std::get<EnrollExternalCert>(enrollment);
        if (ext.cert.subject_id != user_id)
            throw SimError(Err::ParameterError,
                           "external certificate subject does not match user");
        result.certificate = ext.cert;
    }

    m_directory.emplace(user_id, DirectoryEntry{user_id, result.certificate});

    if (m_mode == ServerMode::MaliciousMitm)
    {
        // One counterfeit per user, same identity and usages, provider key.
        DetRng cr = m_rng.fork("counterfeit/" + user_id);
        Counterfeit cf;
        cf.keys = generate_keypair(m_key_bits, cr);
        cf.cert = m_root.issue(user_id, cf.keys.pub, k_user_usage);
        m_counterfeits.emplace(user_id, std::move(cf));
    }

    tick();
    return result;
}

Certificate CloudServer::lookup_certificate(const std::string& requester_id,
                                            const std::string& target_id)
{
    require_user(requester_id);
    const DirectoryEntry& entry = require_user(target_id);

    emit(ev::lookup_response, encode_certificate(entry.certificate));

    // Substitution is pointless on a self-lookup (everyone knows their own
    // key), so the malicious directory only lies about other users.
    if (m_mode == ServerMode::MaliciousMitm &&
        m_scope != MitmScope::DeliveryOnly && requester_id != target_id)
    {
        const Counterfeit& cf = m_counterfeits.at(target_id);
        emit(ev::key_substitution, encode_certificate(cf.cert));
        return cf.cert;
    }
    return entry.certificate;
}

std::string CloudServer::store_blob(const std::string& owner_id,
                                    const EncryptedEnvelope& env)
{
    require_user(owner_id);
    std::string id = next_id("blob", m_blob_counter);
    m_blobs.emplace(id, StoredBlob{id, owner_id, env});
    tick();
    return id;
}

const EncryptedEnvelope&
CloudServer::fetch_blob(const std::string& requester_id,
                        const std::string& blob_id) const
{
    require_user(requester_id);
    auto it = m_blobs.find(blob_id);
    if (it == m_blobs.end())
        throw SimError(Err::UnknownBlob, "no such blob '" + blob_id + "'");
    return it->second.envelope;
}

namespace
{
void check_share_args(const std::map<std::string, DirectoryEntry>& directory,
                      const std::string& owner_id,
                      const std::set<std::string>& member_ids,
                      const std::map<std::string, Bytes>& wrapped_group_key)
{
    if (member_ids.empty())
        throw SimError(Err::ParameterError, "share needs members");
    if (!member_ids.count(owner_id))
        throw SimError(Err::OwnerNotMember,
                       "owner '" + owner_id + "' is not a member");
    for (const auto& m : member_ids)
    {
        if (!directory.count(m))
            throw SimError(Err::UnknownUser, "no such member '" + m + "'");
        if (!wrapped_group_key.count(m))
            throw SimError(Err::ParameterError,
                           "missing wrapped key for member '" + m + "'");
    }
    if (wrapped_group_key.size() != member_ids.size())
        throw SimError(Err::ParameterError,
                       "wrapped keys do not match member set");
}
} // namespace

ShareRecord CloudServer::create_share(
    const std::string& owner_id, ShareKind kind,
    const std::set<std::string>& member_ids,
    const std::map<std::string, Bytes>& wrapped_group_key)
{
    require_user(owner_id);
    check_share_args(m_directory, owner_id, member_ids, wrapped_group_key);

    ShareRecord rec;
    rec.share_id = next_id("share", m_share_counter);
    rec.kind = kind;
    rec.owner_id = owner_id;
    rec.member_ids = member_ids;
    rec.wrapped_group_key = wrapped_group_key;
    rec.epoch = 0;

    if (m_mode == ServerMode::MaliciousMitm && m_scope == MitmScope::Full)
    {
        // The owner wrapped the group key under counterfeit member keys (it
        // trusted the directory). Quietly move each wrap onto the member's
        // real key so the share keeps working; the group key itself is not
        // content, so nothing lands in the breach log yet.
        for (auto& [member, wrapped] : rec.wrapped_group_key)
        {
            auto cf = m_counterfeits.find(member);
            if (cf == m_counterfeits.end())
                continue;
            try
            {
                Bytes raw = unwrap_key(cf->second.keys.priv, wrapped);
                wrapped = wrap_key(m_directory.at(member).certificate.subject_pub,
                                   raw, m_rng);
            }
            catch (const SimError&)
            {
                // Not wrapped under our counterfeit (e.g. the owner's own
                // entry); leave it alone.
            }
        }
    }

    tick();
    m_shares[rec.share_id] = rec;
    return rec;
}

ShareRecord CloudServer::update_share(
    const std::string& owner_id, const std::string& share_id,
    const std::set<std::string>& member_ids,
    const std::map<std::string, Bytes>& wrapped_group_key)
{
    auto it = m_shares.find(share_id);
    if (it == m_shares.end())
        throw SimError(Err::ParameterError, "no such share '" + share_id + "'");
    if (it->second.owner_id != owner_id)
        throw SimError(Err::ParameterError,
                       "only the owner may update a share");
    check_share_args(m_directory, owner_id, member_ids, wrapped_group_key);

    ShareRecord rec = it->second;
    rec.member_ids = member_ids;
    rec.wrapped_group_key = wrapped_group_key;
    rec.epoch += 1;

    if (m_mode == ServerMode::MaliciousMitm && m_scope == MitmScope::Full)
    {
        for (auto& [member, wrapped] : rec.wrapped_group_key)
        {
            auto cf = m_counterfeits.find(member);
            if (cf == m_counterfeits.end())
                continue;
            try
            {
                Bytes raw = unwrap_key(cf->second.keys.priv, wrapped);
                wrapped = wrap_key(m_directory.at(member).certificate.subject_pub,
                                   raw, m_rng);
            }
            catch (const SimError&)
            {
            }
        }
    }

    tick();
    it->second = rec;
    return rec;
}

const ShareRecord& CloudServer::get_share(const std::string& share_id) const
{
    auto it = m_shares.find(share_id);
    if (it == m_shares.end())
        throw SimError(Err::ParameterError, "no such share '" + share_id + "'");
    return it->second;
}

DeliveryReceipt CloudServer::deliver_share(
    const std::string& sender_id, const std::string& recipient_id,
    const EncryptedEnvelope& env, const Certificate& sender_certificate,
    const std::optional<Bytes>& secret_tag)
{
    require_user(sender_id);
    require_user(recipient_id);
    tick();

    InboxItem item;
    item.delivery_id = next_id("delivery", m_delivery_counter);
    item.sender_id = sender_id;
    item.recipient_id = recipient_id;
    item.envelope = env;
    item.sender_certificate = sender_certificate;
    item.secret_tag = secret_tag;

    bool intercept = m_mode == ServerMode::MaliciousMitm &&
                     m_scope != MitmScope::LookupOnly;
    if (intercept)
    {
        // Which wrap entries open under one of our counterfeit keys? Those
        // are the ones the sender addressed to the directory's lies.
        std::optional<SymmetricKey> content_key;
        for (const auto& [uid, wrapped] : env.wrapped_keys)
        {
            for (const auto& [cfid, cf] : m_counterfeits)
            {
                try
                {
                    Bytes raw = unwrap_key(cf.keys.priv, wrapped);
                    if (raw.size() == 32)
                    {
                        content_key = SymmetricKey::from_bytes(raw);
                        break;
                    }
                }
                catch (const SimError&)
                {
                }
            }
            if (content_key)
                break;
        }

        if (content_key)
        {
            Bytes plaintext;
            bool opened = false;
            try
            {
                plaintext = sym_open(*content_key, env.sealed);
                opened = true;
            }
            catch (const SimError&)
            {
                // A key that unwraps but does not authenticate the payload
                // is useless; fall through and forward verbatim.
            }

            if (opened)
            {
                Digest32 digest = sha256(plaintext);
                record_breach(sender_id, recipient_id, digest);
                emit(ev::provider_decrypt, plaintext);

                // Re-encrypt for the real recipient and re-sign the whole
                // envelope under our counterfeit of the sender, so the
                // recipient's checks all come up green.
                EncryptedEnvelope fwd = env;
                auto wk = fwd.wrapped_keys.find(recipient_id);
                if (wk != fwd.wrapped_keys.end())
                {
                    wk->second = wrap_key(
                        m_directory.at(recipient_id).certificate.subject_pub,
                        content_key->view(), m_rng);
                }
                const Counterfeit& cf_sender = m_counterfeits.at(sender_id);
                fwd.sender_signature = sign_message(
                    cf_sender.keys.priv, envelope_signing_payload(fwd));

                item.envelope = fwd;
                item.sender_certificate = cf_sender.cert;
                emit(ev::reencrypt_forward, encode_envelope(fwd));
                m_inboxes[recipient_id].push_back(item);
                return {item.delivery_id, recipient_id};
            }
        }
        else if (m_scope == MitmScope::DeliveryOnly)
        {
            // Nothing we can read, but we can still swap the sender identity
            // material for our counterfeit (the ablation case).
            const Counterfeit& cf_sender = m_counterfeits.at(sender_id);
            EncryptedEnvelope fwd = env;
            fwd.sender_signature = sign_message(cf_sender.keys.priv,
                                                envelope_signing_payload(fwd));
            item.envelope = fwd;
            item.sender_certificate = cf_sender.cert;
        }
    }

    emit(ev::deliver_share, encode_envelope(item.envelope));
    m_inboxes[recipient_id].push_back(item);
    return {item.delivery_id, recipient_id};
}

std::vector<InboxItem> CloudServer::take_inbox(const std::string& user_id)
{
    require_user(user_id);
    auto it = m_inboxes.find(user_id);
    if (it == m_inboxes.end())
        return {};
    std::vector<InboxItem> items = std::move(it->second);
    m_inboxes.erase(it);
    tick();
    return items;
}

std::string CloudServer::register_link(
    const std::string& owner_id, const std::string& blob_id,
    const SymmetricKey& embedded_key,
    const std::optional<Digest32>& password_verifier)
{
    require_user(owner_id);
    auto it = m_blobs.find(blob_id);
    if (it == m_blobs.end())
        throw SimError(Err::UnknownBlob, "no such blob '" + blob_id + "'");
    if (it->second.owner_id != owner_id)
        throw SimError(Err::ParameterError,
                       "only the blob owner may create a link");

    std::string token = to_hex(m_rng.bytes(16));
    m_links.emplace(token, LinkRecord{token, blob_id, embedded_key,
                                      password_verifier});
    tick();
    return token;
}

const LinkRecord& CloudServer::get_link(const std::string& token) const
{
    auto it = m_links.find(token);
    if (it == m_links.end())
        throw SimError(Err::UnknownLink, "no such link token");
    return it->second;
}

const EncryptedEnvelope&
CloudServer::redeem_blob(const std::string& token,
                         const std::optional<std::string>& password)
{
    const LinkRecord& link = get_link(token);
    if (link.password_verifier)
    {
        if (!password)
            throw SimError(Err::BadPassword, "link requires a password");
        // The gate runs server-side, so the server sees every password that
        // crosses it, right or wrong.
        m_observed_passwords.push_back(*password);
        Digest32 got = link_password_verifier(*password);
        if (!ct_equal(ByteView(got.data(), got.size()),
                      ByteView(link.password_verifier->data(),
                               link.password_verifier->size())))
            throw SimError(Err::BadPassword, "wrong link password");
    }
    auto it = m_blobs.find(link.blob_id);
    if (it == m_blobs.end())
        throw SimError(Err::UnknownBlob, "link target vanished");
    return it->second.envelope;
}

PublicShareRecord CloudServer::create_public_share(
    const std::string& owner_id, const std::string& kind,
    const std::string& blob_id, const SymmetricKey& content_key)
{
    require_user(owner_id);
    if (!m_blobs.count(blob_id))
        throw SimError(Err::UnknownBlob, "no such blob '" + blob_id + "'");

    PublicShareRecord rec;
    rec.share_id = next_id("share", m_share_counter);
    rec.kind = kind;
    rec.owner_id = owner_id;
    rec.blob_id = blob_id;
    rec.content_key = content_key;
    m_public_shares[rec.share_id] = rec;
    tick();
    return rec;
}

const PublicShareRecord&
CloudServer::get_public_share(const std::string& share_id) const
{
    auto it = m_public_shares.find(share_id);
    if (it == m_public_shares.end())
        throw SimError(Err::ParameterError,
                       "no such public share '" + share_id + "'");
    return it->second;
}

std::optional<Bytes>
CloudServer::provider_read_attempt(const std::string& blob_id)
{
    auto it = m_blobs.find(blob_id);
    if (it == m_blobs.end())
        throw SimError(Err::UnknownBlob, "no such blob '" + blob_id + "'");
    const EncryptedEnvelope& env = it->second.envelope;

    // Keys the provider holds legitimately: link-embedded keys and published
    // share keys. No counterfeits here; a success below means the content was
    // readable without any attack at all.
    for (const auto& [token, link] : m_links)
    {
        if (link.blob_id != blob_id)
            continue;
        try
        {
            Bytes plaintext = sym_open(link.embedded_key, env.sealed);
            emit(ev::provider_read_plaintext, plaintext);
            return plaintext;
        }
        catch (const SimError&)
        {
        }
    }
    for (const auto& [sid, share] : m_public_shares)
    {
        if (share.blob_id != blob_id)
            continue;
        try
        {
            Bytes plaintext = sym_open(share.content_key, env.sealed);
            emit(ev::provider_read_plaintext, plaintext);
            return plaintext;
        }
        catch (const SimError&)
        {
        }
    }
    return std::nullopt;
}

std::vector<KeyPair> CloudServer::held_private_keys() const
{
    std::vector<KeyPair> keys;
    keys.push_back(m_root.keys);
    for (const auto& [uid, cf] : m_counterfeits)
        keys.push_back(cf.keys);
    return keys;
}

nlohmann::json CloudServer::snapshot() const
{
    nlohmann::json j;
    j["operator"] = m_operator_id;
    j["mode"] = server_mode_name(m_mode);
    j["clock"] = m_clock;
    j["root_certificate"] = base64_encode(encode_certificate(m_root.cert));

    nlohmann::json dir = nlohmann::json::object();
    for (const auto& [uid, entry] : m_directory)
        dir[uid] = base64_encode(encode_certificate(entry.certificate));
    j["directory"] = dir;

    nlohmann::json blobs = nlohmann::json::object();
    for (const auto& [bid, blob] : m_blobs)
    {
        blobs[bid] = {
            {"owner", blob.owner_id},
            {"envelope", base64_encode(encode_envelope(blob.envelope))},
        };
    }
    j["blobs"] = blobs;

    nlohmann::json shares = nlohmann::json::object();
    for (const auto& [sid, rec] : m_shares)
    {
        nlohmann::json wrapped = nlohmann::json::object();
        for (const auto& [member, w] : rec.wrapped_group_key)
            wrapped[member] = base64_encode(w);
        shares[sid] = {
            {"kind", rec.kind == ShareKind::PrivateFolder ? "private-folder"
                                                          : "private-group"},
            {"owner", rec.owner_id},
            {"members", rec.member_ids},
            {"wrapped_group_key", wrapped},
            {"epoch", rec.epoch},
        };
    }
    j["shares"] = shares;

    nlohmann::json pubs = nlohmann::json::object();
    for (const auto& [sid, rec] : m_public_shares)
    {
        pubs[sid] = {
            {"kind", rec.kind},
            {"owner", rec.owner_id},
            {"blob", rec.blob_id},
            {"content_key", base64_encode(rec.content_key.view())},
        };
    }
    j["public_shares"] = pubs;

    nlohmann::json links = nlohmann::json::object();
    for (const auto& [token, link] : m_links)
    {
        nlohmann::json lj = {
            {"blob", link.blob_id},
            {"embedded_key", base64_encode(link.embedded_key.view())},
        };
        if (link.password_verifier)
            lj["password_verifier"] = digest_hex(*link.password_verifier);
        else
            lj["password_verifier"] = nullptr;
        links[token] = lj;
    }
    j["links"] = links;

    nlohmann::json inboxes = nlohmann::json::object();
    for (const auto& [uid, items] : m_inboxes)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& item : items)
        {
            nlohmann::json ij = {
                {"delivery_id", item.delivery_id},
                {"sender", item.sender_id},
                {"envelope", base64_encode(encode_envelope(item.envelope))},
                {"sender_certificate",
                 base64_encode(encode_certificate(item.sender_certificate))},
            };
            if (item.secret_tag)
                ij["secret_tag"] = to_hex(*item.secret_tag);
            else
                ij["secret_tag"] = nullptr;
            arr.push_back(ij);
        }
        inboxes[uid] = arr;
    }
    j["inboxes"] = inboxes;

    nlohmann::json breaches = nlohmann::json::array();
    for (const auto& b : m_breach_log)
    {
        breaches.push_back({
            {"when", b.when},
            {"sender", b.victim_sender},
            {"recipient", b.victim_recipient},
            {"digest", digest_hex(b.plaintext_digest)},
        });
    }
    j["breach_log"] = breaches;

    return j;
}

} // namespace sharesim
