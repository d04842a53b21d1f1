// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/client.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sharesim
{

// The six sharing features a provider offers. "Public" kinds hand the
// provider a readable key by design; "private" kinds are the ones whose
// confidentiality actually rides on key exchange.
enum class SharingKind
{
    PublicWebLink,
    PrivateWebLink,
    PublicFolder,
    PrivateFolder,
    PublicGroup,
    PrivateGroup,
};

constexpr std::array<SharingKind, 6> k_all_sharing_kinds = {
    SharingKind::PublicWebLink,  SharingKind::PrivateWebLink,
    SharingKind::PublicFolder,   SharingKind::PrivateFolder,
    SharingKind::PublicGroup,    SharingKind::PrivateGroup,
};

constexpr std::array<PolicyKind, 4> k_all_policies = {
    PolicyKind::TrustServerDirectory,
    PolicyKind::ChainToExternalRoot,
    PolicyKind::PinnedFingerprint,
    PolicyKind::InvitationSecret,
};

const char* sharing_kind_name(SharingKind k);
std::optional<SharingKind> sharing_kind_from_name(std::string_view name);
std::optional<PolicyKind> policy_kind_from_name(std::string_view name);
std::optional<ServerMode> server_mode_from_name(std::string_view name);
std::optional<MitmScope> mitm_scope_from_name(std::string_view name);

bool is_public_kind(SharingKind k);

enum class Actor
{
    UserA,
    UserB,
    UserC,
    Provider,
    OobChannel,
};

const char* actor_name(Actor a);

struct TranscriptEvent
{
    std::uint64_t step = 0;
    Actor actor = Actor::Provider;
    std::string action;
    std::string payload_digest; // hex sha256 of the event payload
};

using Transcript = std::vector<TranscriptEvent>;

enum class OutcomeKind
{
    SecureShare,      // content reached the recipient, nobody else
    AttackDetected,   // a policy check rejected the manipulated exchange
    BreachUndetected, // provider read the content and nobody noticed
    TrivialDisclosure // provider could read without mounting any attack
};

const char* outcome_kind_name(OutcomeKind k);

struct Outcome
{
    OutcomeKind kind = OutcomeKind::SecureShare;
    std::optional<RejectReason> reason;
};

struct RecipientVerdict
{
    bool accepted = false;
    std::optional<RejectReason> reason;
};

// "accept" or "reject:<Reason>"; the code criterion 3-style sweeps compare.
std::string verdict_code(const RecipientVerdict& v);

struct Scenario
{
    std::string name;
    SharingKind kind = SharingKind::PrivateFolder;
    PolicyKind policy = PolicyKind::TrustServerDirectory;
    ServerMode mode = ServerMode::Honest;
    std::uint64_t seed = 0;
    Bytes plaintext_marker; // exactly 64 bytes
    MitmScope scope = MitmScope::Full;
    unsigned key_bits = k_toy_key_bits;
};

// 64 bytes, unique per (kind, policy, mode, seed), printable ASCII.
Bytes default_marker(SharingKind kind, PolicyKind policy, ServerMode mode,
                     std::uint64_t seed);

Scenario make_scenario(SharingKind kind, PolicyKind policy, ServerMode mode,
                       std::uint64_t seed,
                       unsigned key_bits = k_toy_key_bits,
                       MitmScope scope = MitmScope::Full);

struct RunResult
{
    Transcript transcript;
    Outcome outcome;
    std::vector<BreachRecord> breach_log;
    std::optional<RecipientVerdict> recipient_verdict;
    std::string server_snapshot; // canonical JSON text
    std::vector<EncryptedEnvelope> stored_envelopes;
    std::vector<KeyPair> server_held_keys;
    Digest32 marker_digest{};
};

// Drives the whole exchange for one scenario. The harness owns the ground
// truth: it classifies from what the clients actually returned, then
// cross-checks against classify_from_evidence and refuses to return if the
// two disagree.
RunResult run_attack_scenario(const Scenario& sc);

// Independent classification using nothing but the transcript and the breach
// count; the test suites run this against the engine's verdicts.
Outcome classify_from_evidence(const Transcript& transcript,
                               std::size_t breach_count);

struct MatrixCell
{
    SharingKind kind = SharingKind::PrivateFolder;
    PolicyKind policy = PolicyKind::TrustServerDirectory;
    ServerMode mode = ServerMode::Honest;
    Outcome outcome;
};

struct MatrixReport
{
    std::uint64_t seed = 0;
    std::vector<MatrixCell> cells; // kind-major, then policy, then mode
    // Trivial means the provider reads the content in the honest run, i.e.
    // no attack is even needed for that sharing feature.
    std::map<SharingKind, bool> trivial;
};

MatrixReport run_matrix(std::uint64_t seed);

// Per-cell seed, derived so cells are independent and reproducible.
std::uint64_t matrix_cell_seed(std::uint64_t seed, SharingKind kind,
                               PolicyKind policy, ServerMode mode);

} // namespace sharesim
