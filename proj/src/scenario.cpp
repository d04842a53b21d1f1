// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/scenario.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

const char* sharing_kind_name(SharingKind k)
{
    switch (k)
    {
    case SharingKind::PublicWebLink:
        return "public-web-link";
    case SharingKind::PrivateWebLink:
        return "private-web-link";
    case SharingKind::PublicFolder:
        return "public-folder";
    case SharingKind::PrivateFolder:
        return "private-folder";
    case SharingKind::PublicGroup:
        return "public-group";
    case SharingKind::PrivateGroup:
        return "private-group";
    }
    return "unknown";
}

std::optional<SharingKind> sharing_kind_from_name(std::string_view name)
{
    for (SharingKind k : k_all_sharing_kinds)
    {
        if (name == sharing_kind_name(k))
            return k;
    }
    return std::nullopt;
}

std::optional<PolicyKind> policy_kind_from_name(std::string_view name)
{
    for (PolicyKind p : k_all_policies)
    {
        if (name == policy_kind_name(p))
            return p;
    }
    return std::nullopt;
}

std::optional<ServerMode> server_mode_from_name(std::string_view name)
{
    if (name == server_mode_name(ServerMode::Honest))
        return ServerMode::Honest;
    if (name == server_mode_name(ServerMode::MaliciousMitm) || name == "mitm")
        return ServerMode::MaliciousMitm;
    return std::nullopt;
}

std::optional<MitmScope> mitm_scope_from_name(std::string_view name)
{
    for (MitmScope s : {MitmScope::Full, MitmScope::LookupOnly, MitmScope::DeliveryOnly})
    {
        if (name == mitm_scope_name(s))
            return s;
    }
    return std::nullopt;
}

bool is_public_kind(SharingKind k)
{
    switch (k)
    {
    case SharingKind::PublicWebLink:
    case SharingKind::PrivateWebLink:
    case SharingKind::PublicFolder:
    case SharingKind::PublicGroup:
        return true;
    case SharingKind::PrivateFolder:
    case SharingKind::PrivateGroup:
        return false;
    }
    return false;
}

const char* actor_name(Actor a)
{
    switch (a)
    {
    case Actor::UserA:
        return "user-a";
    case Actor::UserB:
        return "user-b";
    case Actor::UserC:
        return "user-c";
    case Actor::Provider:
        return "provider";
    case Actor::OobChannel:
        return "oob-channel";
    }
    return "unknown";
}

const char* outcome_kind_name(OutcomeKind k)
{
    switch (k)
    {
    case OutcomeKind::SecureShare:
        return "secure-share";
    case OutcomeKind::AttackDetected:
        return "attack-detected";
    case OutcomeKind::BreachUndetected:
        return "breach-undetected";
    case OutcomeKind::TrivialDisclosure:
        return "trivial-disclosure";
    }
    return "unknown";
}

std::string verdict_code(const RecipientVerdict& v)
{
    if (v.accepted)
        return "accept";
    std::string code = "reject:";
    if (v.reason)
        code += reject_reason_name(*v.reason);
    return code;
}

Bytes default_marker(SharingKind kind, PolicyKind policy, ServerMode mode,
                     std::uint64_t seed)
{
    char seed_hex[17];
    std::snprintf(seed_hex, sizeof(seed_hex), "%016llx",
                  static_cast<unsigned long long>(seed));
    std::string text = std::string("MK:") + seed_hex + ":" +
                       sharing_kind_name(kind) + ":" +
                       policy_kind_name(policy) + ":" +
                       server_mode_name(mode);
    text.resize(64, '#');
    return str_bytes(text);
}

Scenario make_scenario(SharingKind kind, PolicyKind policy, ServerMode mode,
                       std::uint64_t seed, unsigned key_bits, MitmScope scope)
{
    Scenario sc;
    sc.kind = kind;
    sc.policy = policy;
    sc.mode = mode;
    sc.seed = seed;
    sc.key_bits = key_bits;
    sc.scope = scope;
    sc.plaintext_marker = default_marker(kind, policy, mode, seed);
    sc.name = std::string(sharing_kind_name(kind)) + "/" +
              policy_kind_name(policy) + "/" + server_mode_name(mode) +
              "/seed-" + std::to_string(seed);
    return sc;
}

namespace
{

struct Recorder
{
    Transcript events;
    std::uint64_t next_step = 0;

    void record(Actor actor, std::string_view action, ByteView payload)
    {
        events.push_back(TranscriptEvent{next_step++, actor,
                                         std::string(action),
                                         digest_hex(sha256(payload))});
    }

    EventSink sink_for(Actor actor)
    {
        return [this, actor](std::string_view action, ByteView payload) {
            record(actor, action, payload);
        };
    }
};

std::optional<RejectReason> reason_from_action(const std::string& action)
{
    auto parse = [&](std::string_view prefix) -> std::optional<RejectReason> {
        if (action.rfind(prefix, 0) != 0)
            return std::nullopt;
        std::string_view name(action);
        name.remove_prefix(prefix.size());
        for (int i = 0; i <= static_cast<int>(RejectReason::UnknownLink); ++i)
        {
            RejectReason r = static_cast<RejectReason>(i);
            if (name == reject_reason_name(r))
                return r;
        }
        return std::nullopt;
    };
    if (auto r = parse(ev::share_rejected_prefix))
        return r;
    return parse(ev::accept_rejected_prefix);
}

// Shared rule table for both the engine's ground-truth classification and the
// transcript-based checker. Keeping it in one place keeps them honest about
// the same corner cases while the inputs stay independent.
Outcome classify(bool provider_read, std::size_t breach_count,
                 bool recipient_got, std::optional<RejectReason> rejected)
{
    Outcome out;
    out.reason = rejected;
    if (provider_read)
    {
        // Content was readable without any counterfeit key in play.
        out.kind = OutcomeKind::TrivialDisclosure;
        return out;
    }
    if (breach_count > 0)
    {
        // The provider read content it had to counterfeit keys to reach.
        // Detection after the fact still counts as detection; silence does
        // not, whatever else went wrong downstream.
        out.kind = (rejected && !recipient_got) ? OutcomeKind::AttackDetected
                                                : OutcomeKind::BreachUndetected;
        return out;
    }
    out.kind = rejected ? OutcomeKind::AttackDetected : OutcomeKind::SecureShare;
    return out;
}

struct ScenarioWorld
{
    const Scenario& sc;
    Recorder rec;
    CloudServer server;
    std::optional<CaIdentity> external_ca;
    DetRng rng;
    Bytes oob_secret;

    // Ground truth the harness tracks itself, independent of the transcript.
    bool provider_read = false;
    bool recipient_got = false;
    std::optional<RejectReason> rejected;
    std::optional<RecipientVerdict> verdict;

    explicit ScenarioWorld(const Scenario& scenario)
        : sc(scenario),
          server(scenario.mode, "CloudCo", scenario.key_bits,
                 DetRng(scenario.seed, "scenario/server"), scenario.scope),
          rng(scenario.seed, "scenario/harness")
    {
        server.set_event_sink(rec.sink_for(Actor::Provider));
        if (sc.policy == PolicyKind::ChainToExternalRoot)
        {
            DetRng ca_rng = rng.fork("external-ca");
            external_ca = CaIdentity::create("External Root CA",
                                             sc.key_bits, ca_rng);
        }
        if (sc.policy == PolicyKind::InvitationSecret)
            oob_secret = rng.fork("oob-secret").bytes(32);
    }

    VerificationPolicy make_policy() const
    {
        switch (sc.policy)
        {
        case PolicyKind::TrustServerDirectory:
            return TrustServerDirectoryPolicy{};
        case PolicyKind::ChainToExternalRoot:
        {
            TrustStore roots;
            roots.add("external-root", external_ca->cert);
            return ChainToExternalRootPolicy{std::move(roots)};
        }
        case PolicyKind::PinnedFingerprint:
            return PinnedFingerprintPolicy{};
        case PolicyKind::InvitationSecret:
            return InvitationSecretPolicy{oob_secret};
        }
        throw SimError(Err::ConfigError, "unknown policy");
    }

    ClientAgent enroll(const std::string& user_id, Actor actor)
    {
        ClientAgent agent = ClientAgent::enroll(
            user_id, make_policy(), server, rng.fork("client/" + user_id),
            EnrollmentStyle::ClientKey,
            external_ca ? &*external_ca : nullptr);
        agent.set_event_sink(rec.sink_for(actor));
        rec.record(actor, ev::signup, encode_certificate(agent.certificate()));
        return agent;
    }

    void note_share(const ShareOutcome& out)
    {
        if (out.rejected && !rejected)
            rejected = out.rejected;
    }

    void note_accept(const AcceptOutcome& out)
    {
        if (out.plaintext && *out.plaintext == sc.plaintext_marker)
            recipient_got = true;
        if (out.rejected && !rejected)
            rejected = out.rejected;
        if (!verdict)
            verdict = RecipientVerdict{out.plaintext.has_value(), out.rejected};
    }

    void provider_scan(const std::string& blob_id)
    {
        if (server.provider_read_attempt(blob_id))
            provider_read = true;
    }

    // One recipient draining its inbox and accepting everything addressed
    // to it.
    void drain_and_accept(ClientAgent& user)
    {
        std::vector<InboxItem> items = server.take_inbox(user.user_id());
        for (const auto& item : items)
            note_accept(user.accept_share(user.to_invitation(item)));
    }
};

void run_private_folder(ScenarioWorld& w)
{
    ClientAgent a = w.enroll("user-a", Actor::UserA);
    ClientAgent b = w.enroll("user-b", Actor::UserB);

    if (w.sc.policy == PolicyKind::PinnedFingerprint)
    {
        ClientAgent::oob_exchange(a, b);
        w.rec.record(Actor::OobChannel, ev::oob_exchange,
                     concat(digest_bytes(a.fingerprint().digest),
                            digest_bytes(b.fingerprint().digest)));
    }
    else if (w.sc.policy == PolicyKind::InvitationSecret)
    {
        w.rec.record(Actor::OobChannel, ev::secret_provision, w.oob_secret);
    }

    std::string blob_id = a.upload(w.sc.plaintext_marker, w.server);
    w.provider_scan(blob_id);

    ShareOutcome share = a.share_with("user-b", w.sc.plaintext_marker,
                                      w.server);
    w.note_share(share);
    if (share.receipt)
        w.drain_and_accept(b);
}

void run_private_group(ScenarioWorld& w)
{
    ClientAgent a = w.enroll("user-a", Actor::UserA);
    ClientAgent b = w.enroll("user-b", Actor::UserB);
    ClientAgent c = w.enroll("user-c", Actor::UserC);

    if (w.sc.policy == PolicyKind::PinnedFingerprint)
    {
        ClientAgent::oob_exchange(a, b);
        w.rec.record(Actor::OobChannel, ev::oob_exchange,
                     concat(digest_bytes(a.fingerprint().digest),
                            digest_bytes(b.fingerprint().digest)));
        ClientAgent::oob_exchange(a, c);
        w.rec.record(Actor::OobChannel, ev::oob_exchange,
                     concat(digest_bytes(a.fingerprint().digest),
                            digest_bytes(c.fingerprint().digest)));
    }
    else if (w.sc.policy == PolicyKind::InvitationSecret)
    {
        w.rec.record(Actor::OobChannel, ev::secret_provision, w.oob_secret);
    }

    std::string blob_id = a.upload(w.sc.plaintext_marker, w.server);
    w.provider_scan(blob_id);

    w.rec.record(Actor::UserA, ev::share_request, str_bytes("user-b,user-c"));
    GroupCreateOutcome g = a.create_group({"user-b", "user-c"}, w.server);
    if (g.rejected)
    {
        w.rejected = g.rejected;
        return;
    }

    ShareOutcome share =
        a.share_to_group(*g.group, w.sc.plaintext_marker, w.server);
    w.note_share(share);
    w.drain_and_accept(b);
    w.drain_and_accept(c);
}

void run_link(ScenarioWorld& w, bool password_gated)
{
    ClientAgent a = w.enroll("user-a", Actor::UserA);

    std::string blob_id = a.upload(w.sc.plaintext_marker, w.server);

    std::optional<std::string> password;
    if (password_gated)
        password = to_hex(w.rng.fork("link-password").bytes(8));

    PrivateLink link = a.create_share_link(blob_id, password, w.server);

    // The moment the link exists the provider holds the embedded key.
    w.provider_scan(blob_id);

    RedeemResult res = ClientAgent::redeem_link(link, password, w.server);
    if (res.plaintext)
    {
        w.rec.record(Actor::UserB, ev::redeem_link, *res.plaintext);
        if (*res.plaintext == w.sc.plaintext_marker)
            w.recipient_got = true;
    }
    if (!w.verdict)
        w.verdict = RecipientVerdict{res.plaintext.has_value(), res.rejected};
    if (res.rejected && !w.rejected)
        w.rejected = res.rejected;
}

void run_public(ScenarioWorld& w, const char* kind_name)
{
    ClientAgent a = w.enroll("user-a", Actor::UserA);
    ClientAgent b = w.enroll("user-b", Actor::UserB);

    PublicShareRecord rec =
        a.publish_public(kind_name, w.sc.plaintext_marker, w.server);

    w.provider_scan(rec.blob_id);

    AcceptOutcome read = b.read_public(rec.share_id, w.server);
    w.note_accept(read);
}

} // namespace

Outcome classify_from_evidence(const Transcript& transcript,
                               std::size_t breach_count)
{
    bool provider_read = false;
    bool recipient_got = false;
    std::optional<RejectReason> rejected;

    for (const TranscriptEvent& e : transcript)
    {
        if (e.action == ev::provider_read_plaintext)
            provider_read = true;
        if ((e.action == ev::decrypt_share || e.action == ev::redeem_link) &&
            e.actor != Actor::UserA && e.actor != Actor::Provider)
            recipient_got = true;
        if (!rejected)
            rejected = reason_from_action(e.action);
    }
    return classify(provider_read, breach_count, recipient_got, rejected);
}

RunResult run_attack_scenario(const Scenario& sc)
{
    if (sc.plaintext_marker.size() != 64)
        throw SimError(Err::ConfigError, "plaintext marker must be 64 bytes");
    if (sc.key_bits != k_toy_key_bits && sc.key_bits != k_default_key_bits)
        throw SimError(Err::ConfigError, "unsupported key size");

    ScenarioWorld w(sc);

    switch (sc.kind)
    {
    case SharingKind::PrivateFolder:
        run_private_folder(w);
        break;
    case SharingKind::PrivateGroup:
        run_private_group(w);
        break;
    case SharingKind::PublicWebLink:
        run_link(w, false);
        break;
    case SharingKind::PrivateWebLink:
        run_link(w, true);
        break;
    case SharingKind::PublicFolder:
        run_public(w, "public-folder");
        break;
    case SharingKind::PublicGroup:
        run_public(w, "public-group");
        break;
    }

    RunResult result;
    result.transcript = std::move(w.rec.events);
    result.breach_log = w.server.read_breach_log();
    result.recipient_verdict = w.verdict;
    result.server_snapshot = w.server.snapshot().dump(2) + "\n";
    for (const auto& [id, blob] : w.server.blobs())
        result.stored_envelopes.push_back(blob.envelope);
    result.server_held_keys = w.server.held_private_keys();
    result.marker_digest = sha256(sc.plaintext_marker);

    result.outcome = classify(w.provider_read, result.breach_log.size(),
                              w.recipient_got, w.rejected);

    // The transcript-driven checker must agree with what actually happened;
    // a split verdict means the simulation is lying somewhere.
    Outcome check =
        classify_from_evidence(result.transcript, result.breach_log.size());
    if (check.kind != result.outcome.kind)
        throw SimError(Err::IntegrityError,
                       "transcript classifier disagrees with ground truth");

    return result;
}

std::uint64_t matrix_cell_seed(std::uint64_t seed, SharingKind kind,
                               PolicyKind policy, ServerMode mode)
{
    Bytes material = str_bytes("matrix-cell");
    for (int shift = 56; shift >= 0; shift -= 8)
        material.push_back(static_cast<std::uint8_t>((seed >> shift) & 0xff));
    material.push_back(static_cast<std::uint8_t>(kind));
    material.push_back(static_cast<std::uint8_t>(policy));
    material.push_back(static_cast<std::uint8_t>(mode));
    Digest32 d = sha256(material);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | d[static_cast<std::size_t>(i)];
    return v;
}

MatrixReport run_matrix(std::uint64_t seed)
{
    MatrixReport report;
    report.seed = seed;

    for (SharingKind kind : k_all_sharing_kinds)
    {
        for (PolicyKind policy : k_all_policies)
        {
            for (ServerMode mode : {ServerMode::Honest,
                                    ServerMode::MaliciousMitm})
            {
                Scenario sc = make_scenario(
                    kind, policy, mode,
                    matrix_cell_seed(seed, kind, policy, mode));
                RunResult run = run_attack_scenario(sc);
                report.cells.push_back(
                    MatrixCell{kind, policy, mode, run.outcome});

                if (policy == PolicyKind::TrustServerDirectory &&
                    mode == ServerMode::Honest)
                {
                    report.trivial[kind] =
                        run.outcome.kind == OutcomeKind::TrivialDisclosure;
                }
            }
        }
    }
    return report;
}

} // namespace sharesim
