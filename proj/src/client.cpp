// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/client.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

PolicyKind policy_kind(const VerificationPolicy& policy)
{
    if (std::holds_alternative<TrustServerDirectoryPolicy>(policy))
        return PolicyKind::TrustServerDirectory;
    if (std::holds_alternative<ChainToExternalRootPolicy>(policy))
        return PolicyKind::ChainToExternalRoot;
    if (std::holds_alternative<PinnedFingerprintPolicy>(policy))
        return PolicyKind::PinnedFingerprint;
    return PolicyKind::InvitationSecret;
}

const char* policy_kind_name(PolicyKind kind)
{
    switch (kind)
    {
    case PolicyKind::TrustServerDirectory:
        return "trust-server-directory";
    case PolicyKind::ChainToExternalRoot:
        return "chain-to-external-root";
    case PolicyKind::PinnedFingerprint:
        return "pinned-fingerprint";
    case PolicyKind::InvitationSecret:
        return "invitation-secret";
    }
    return "unknown";
}

const char* reject_reason_name(RejectReason r)
{
    switch (r)
    {
    case RejectReason::UnknownRoot:
        return "UnknownRoot";
    case RejectReason::BadSignature:
        return "BadSignature";
    case RejectReason::UsageViolation:
        return "UsageViolation";
    case RejectReason::Expired:
        return "Expired";
    case RejectReason::FingerprintMismatch:
        return "FingerprintMismatch";
    case RejectReason::NotPinned:
        return "NotPinned";
    case RejectReason::SecretTagMismatch:
        return "SecretTagMismatch";
    case RejectReason::SenderSignatureInvalid:
        return "SenderSignatureInvalid";
    case RejectReason::NotARecipient:
        return "NotARecipient";
    case RejectReason::IntegrityError:
        return "IntegrityError";
    case RejectReason::BadPassword:
        return "BadPassword";
    case RejectReason::UnknownLink:
        return "UnknownLink";
    }
    return "Unknown";
}

namespace
{

RejectReason reason_from_chain(ChainStatus s)
{
    switch (s)
    {
    case ChainStatus::BadSignature:
        return RejectReason::BadSignature;
    case ChainStatus::UsageViolation:
        return RejectReason::UsageViolation;
    case ChainStatus::Expired:
        return RejectReason::Expired;
    case ChainStatus::UnknownRoot:
    case ChainStatus::Ok:
        break;
    }
    return RejectReason::UnknownRoot;
}

RejectReason reason_from_error(const SimError& e)
{
    switch (e.code())
    {
    case Err::SenderSignatureInvalid:
        return RejectReason::SenderSignatureInvalid;
    case Err::NotARecipient:
        return RejectReason::NotARecipient;
    case Err::BadPassword:
        return RejectReason::BadPassword;
    case Err::UnknownLink:
        return RejectReason::UnknownLink;
    default:
        return RejectReason::IntegrityError;
    }
}

Bytes invitation_tag(const Bytes& secret, const EncryptedEnvelope& env)
{
    Digest32 t = hmac_sha256(secret, encode_envelope(env));
    return digest_bytes(t);
}

std::string rejected_action(std::string_view prefix, RejectReason r)
{
    return std::string(prefix) + reject_reason_name(r);
}

} // namespace

ClientAgent::ClientAgent(std::string user_id, VerificationPolicy policy,
                         DetRng rng)
    : m_user_id(std::move(user_id)),
      m_policy(std::move(policy)),
      m_rng(std::move(rng))
{
}

void ClientAgent::emit(std::string_view action, ByteView payload) const
{
    if (m_sink)
        m_sink(action, payload);
}

ClientAgent ClientAgent::enroll(const std::string& user_id,
                                VerificationPolicy policy, CloudServer& server,
                                DetRng rng, EnrollmentStyle style,
                                const CaIdentity* external_ca)
{
    ClientAgent agent(user_id, std::move(policy), std::move(rng));

    bool external =
        std::holds_alternative<ChainToExternalRootPolicy>(agent.m_policy);
    if (external && external_ca == nullptr)
        throw SimError(Err::ConfigError,
                       "chain-to-external-root policy needs an external CA");

    if (style == EnrollmentStyle::ServerGenerated)
    {
        if (external)
            throw SimError(Err::ConfigError,
                           "server-generated keys cannot carry an external "
                           "certificate");
        RegistrationResult reg =
            server.register_user(user_id, EnrollServerGenerated{});
        agent.m_keys = *reg.generated;
        agent.m_cert = reg.certificate;
    }
    else
    {
        agent.m_keys = generate_keypair(server.key_bits(), agent.m_rng);
        if (external)
        {
            Certificate cert = external_ca->issue(
                user_id, agent.m_keys.pub,
                usage(KeyUsage::digital_signature, KeyUsage::key_encipherment));
            RegistrationResult reg =
                server.register_user(user_id, EnrollExternalCert{cert});
            agent.m_cert = reg.certificate;
        }
        else
        {
            RegistrationResult reg = server.register_user(
                user_id, EnrollClientKey{agent.m_keys.pub});
            agent.m_cert = reg.certificate;
        }
    }

    if (!(agent.m_cert.subject_pub == agent.m_keys.pub))
        throw SimError(Err::IntegrityError,
                       "issued certificate does not carry our key");

    agent.m_provider_anchor.add("provider-root", server.root_certificate());
    return agent;
}

PeerCheck ClientAgent::check_against_store(const Certificate& peer_cert,
                                           const TrustStore& roots) const
{
    const Certificate* root = roots.find_by_subject(peer_cert.issuer_id);
    if (root == nullptr)
    {
        // Nothing we trust ever heard of this issuer.
        return {false, RejectReason::UnknownRoot};
    }
    ChainResult res = validate_chain({peer_cert, *root}, roots, m_now);
    if (!res.ok())
        return {false, reason_from_chain(res.status)};
    return {true, std::nullopt};
}

PeerCheck ClientAgent::verify_peer(const Certificate& peer_cert,
                                   const std::string& expected_id) const
{
    if (peer_cert.subject_id != expected_id)
        return {false, RejectReason::FingerprintMismatch};

    if (std::holds_alternative<TrustServerDirectoryPolicy>(m_policy))
    {
        return check_against_store(peer_cert, m_provider_anchor);
    }
    if (const auto* ext = std::get_if<ChainToExternalRootPolicy>(&m_policy))
    {
        return check_against_store(peer_cert, ext->roots);
    }
    if (std::holds_alternative<PinnedFingerprintPolicy>(m_policy))
    {
        auto it = m_pinned.find(expected_id);
        if (it == m_pinned.end())
            return {false, RejectReason::NotPinned};
        if (!(key_fingerprint(peer_cert.subject_pub) == it->second))
            return {false, RejectReason::FingerprintMismatch};
        return {true, std::nullopt};
    }
    // InvitationSecret defers to the envelope MAC at accept time; the
    // certificate is taken at face value here.
    return {true, std::nullopt};
}

std::string ClientAgent::upload(ByteView plaintext, CloudServer& server)
{
    EncryptedEnvelope env =
        seal_envelope(m_user_id, m_keys.priv, plaintext,
                      {{m_user_id, m_keys.pub}}, m_rng);
    std::string blob_id = server.store_blob(m_user_id, env);
    emit(ev::store_blob, encode_envelope(env));
    return blob_id;
}

ShareOutcome ClientAgent::share_with(const std::string& target_id,
                                     ByteView plaintext, CloudServer& server)
{
    emit(ev::share_request, str_bytes(target_id));

    Certificate target_cert =
        server.lookup_certificate(m_user_id, target_id);
    PeerCheck check = verify_peer(target_cert, target_id);
    if (!check.accepted)
    {
        // No envelope leaves this client on a failed check.
        emit(rejected_action(ev::share_rejected_prefix, *check.reason),
             encode_certificate(target_cert));
        return {std::nullopt, check.reason};
    }

    EncryptedEnvelope env =
        seal_envelope(m_user_id, m_keys.priv, plaintext,
                      {{target_id, target_cert.subject_pub}}, m_rng);
    emit(ev::encrypt_data, encode_envelope(env));

    std::optional<Bytes> tag;
    if (const auto* inv = std::get_if<InvitationSecretPolicy>(&m_policy))
        tag = invitation_tag(inv->secret, env);

    DeliveryReceipt receipt =
        server.deliver_share(m_user_id, target_id, env, m_cert, tag);
    return {receipt, std::nullopt};
}

ShareInvitation ClientAgent::to_invitation(const InboxItem& item) const
{
    if (item.recipient_id != m_user_id)
        throw SimError(Err::NotARecipient,
                       "delivery addressed to " + item.recipient_id);
    return ShareInvitation{item.delivery_id, item.sender_id, item.envelope,
                           item.sender_certificate, item.secret_tag};
}

AcceptOutcome ClientAgent::accept_share(const ShareInvitation& invitation)
{
    std::optional<RejectReason> reject;

    if (const auto* inv = std::get_if<InvitationSecretPolicy>(&m_policy))
    {
        // End-to-end check: the MAC was keyed out of band and covers the
        // whole envelope encoding, so any server-side rewrite breaks it.
        if (!invitation.secret_tag ||
            !ct_equal(*invitation.secret_tag,
                      invitation_tag(inv->secret, invitation.envelope)))
        {
            reject = RejectReason::SecretTagMismatch;
        }
    }
    else
    {
        PeerCheck check =
            verify_peer(invitation.sender_certificate, invitation.sender_id);
        if (!check.accepted)
            reject = check.reason;
    }

    if (!reject)
    {
        try
        {
            Bytes plaintext =
                open_envelope(m_keys.priv, m_user_id, invitation.envelope,
                              invitation.sender_certificate.subject_pub);
            emit(ev::decrypt_share, plaintext);
            return {plaintext, std::nullopt};
        }
        catch (const SimError& e)
        {
            reject = reason_from_error(e);
        }
    }

    emit(rejected_action(ev::accept_rejected_prefix, *reject),
         encode_certificate(invitation.sender_certificate));
    return {std::nullopt, reject};
}

void ClientAgent::oob_exchange(ClientAgent& a, ClientAgent& b)
{
    a.pin_fingerprint(b.user_id(), b.fingerprint());
    b.pin_fingerprint(a.user_id(), a.fingerprint());
}

void ClientAgent::pin_fingerprint(const std::string& peer_id,
                                  const Fingerprint& fp)
{
    m_pinned[peer_id] = fp;
}

PrivateLink ClientAgent::create_share_link(
    const std::string& blob_id, const std::optional<std::string>& password,
    CloudServer& server)
{
    const EncryptedEnvelope& env = server.fetch_blob(m_user_id, blob_id);
    SymmetricKey content_key =
        unwrap_content_key(m_keys.priv, m_user_id, env);

    std::optional<Digest32> verifier;
    if (password)
        verifier = hmac_sha256(str_bytes("link-password"), str_bytes(*password));

    std::string token =
        server.register_link(m_user_id, blob_id, content_key, verifier);
    emit(ev::create_link, str_bytes(token));
    return PrivateLink{token, content_key, password.has_value()};
}

RedeemResult ClientAgent::redeem_link(const PrivateLink& link,
                                      const std::optional<std::string>& password,
                                      CloudServer& server)
{
    try
    {
        const EncryptedEnvelope& env = server.redeem_blob(link.token, password);
        // Links carry the key with them; the payload opens without any
        // identity in play.
        Bytes plaintext = sym_open(link.embedded_key, env.sealed);
        return {plaintext, std::nullopt};
    }
    catch (const SimError& e)
    {
        return {std::nullopt, reason_from_error(e)};
    }
}

PublicShareRecord ClientAgent::publish_public(const std::string& kind,
                                              ByteView plaintext,
                                              CloudServer& server)
{
    SymmetricKey content_key = SymmetricKey::random(m_rng);
    EncryptedEnvelope env =
        seal_envelope_with_key(m_user_id, m_keys.priv, content_key, plaintext,
                               {{m_user_id, m_keys.pub}}, m_rng);
    std::string blob_id = server.store_blob(m_user_id, env);
    emit(ev::store_blob, encode_envelope(env));

    PublicShareRecord rec =
        server.create_public_share(m_user_id, kind, blob_id, content_key);
    emit(ev::publish_share, str_bytes(rec.share_id));
    return rec;
}

AcceptOutcome ClientAgent::read_public(const std::string& share_id,
                                       CloudServer& server)
{
    try
    {
        const PublicShareRecord& rec = server.get_public_share(share_id);
        const EncryptedEnvelope& env = server.fetch_blob(m_user_id, rec.blob_id);
        Bytes plaintext = sym_open(rec.content_key, env.sealed);
        emit(ev::decrypt_share, plaintext);
        return {plaintext, std::nullopt};
    }
    catch (const SimError& e)
    {
        return {std::nullopt, reason_from_error(e)};
    }
}

GroupCreateOutcome ClientAgent::build_group(
    const std::set<std::string>& member_ids,
    const std::string& existing_share_id, CloudServer& server)
{
    GroupHandle handle;
    handle.member_pubs[m_user_id] = m_keys.pub;

    for (const auto& member : member_ids)
    {
        if (member == m_user_id)
            continue;
        Certificate cert = server.lookup_certificate(m_user_id, member);
        PeerCheck check = verify_peer(cert, member);
        if (!check.accepted)
        {
            emit(rejected_action(ev::share_rejected_prefix, *check.reason),
                 encode_certificate(cert));
            return {std::nullopt, check.reason};
        }
        handle.member_pubs[member] = cert.subject_pub;
    }

    handle.content_key = SymmetricKey::random(m_rng);
    std::map<std::string, Bytes> wrapped;
    for (const auto& [member, pub] : handle.member_pubs)
        wrapped[member] = wrap_key(pub, handle.content_key.view(), m_rng);

    if (existing_share_id.empty())
    {
        handle.record = server.create_share(m_user_id, ShareKind::PrivateGroup,
                                            member_ids, wrapped);
        emit(ev::create_group, str_bytes(handle.record.share_id));
    }
    else
    {
        handle.record = server.update_share(m_user_id, existing_share_id,
                                            member_ids, wrapped);
    }
    return {handle, std::nullopt};
}

GroupCreateOutcome
ClientAgent::create_group(const std::set<std::string>& member_ids,
                          CloudServer& server)
{
    std::set<std::string> members = member_ids;
    members.insert(m_user_id);
    return build_group(members, "", server);
}

ShareOutcome ClientAgent::share_to_group(const GroupHandle& group,
                                         ByteView plaintext,
                                         CloudServer& server)
{
    std::vector<Recipient> recipients;
    for (const auto& [member, pub] : group.member_pubs)
        recipients.push_back({member, pub});

    EncryptedEnvelope env =
        seal_envelope_with_key(m_user_id, m_keys.priv, group.content_key,
                               plaintext, recipients, m_rng);
    emit(ev::encrypt_data, encode_envelope(env));

    std::optional<Bytes> tag;
    if (const auto* inv = std::get_if<InvitationSecretPolicy>(&m_policy))
        tag = invitation_tag(inv->secret, env);

    ShareOutcome out;
    for (const auto& [member, pub] : group.member_pubs)
    {
        if (member == m_user_id)
            continue;
        out.receipt = server.deliver_share(m_user_id, member, env, m_cert, tag);
    }
    return out;
}

GroupCreateOutcome ClientAgent::add_member(const GroupHandle& group,
                                           const std::string& member_id,
                                           CloudServer& server)
{
    std::set<std::string> members = group.record.member_ids;
    members.insert(member_id);
    return build_group(members, group.record.share_id, server);
}

GroupHandle ClientAgent::remove_member(const GroupHandle& group,
                                       const std::string& member_id,
                                       CloudServer& server)
{
    if (member_id == m_user_id)
        throw SimError(Err::OwnerNotMember, "owner cannot leave its own share");
    std::set<std::string> members = group.record.member_ids;
    members.erase(member_id);

    // No new certificates involved in a removal: reuse what we verified
    // before, minus the departing member, under a fresh key.
    GroupHandle handle;
    handle.member_pubs = group.member_pubs;
    handle.member_pubs.erase(member_id);
    handle.content_key = SymmetricKey::random(m_rng);
    std::map<std::string, Bytes> wrapped;
    for (const auto& [member, pub] : handle.member_pubs)
        wrapped[member] = wrap_key(pub, handle.content_key.view(), m_rng);
    handle.record = server.update_share(m_user_id, group.record.share_id,
                                        members, wrapped);
    return handle;
}

} // namespace sharesim
