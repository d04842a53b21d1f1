// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"

#include <functional>
#include <string_view>

namespace sharesim
{

// Components report what they do through an injected sink; the scenario
// harness owns the sink, assigns actors and step numbers, and never trusts a
// component's self-description for outcome classification (it re-derives the
// verdict from ground truth it tracked itself).
using EventSink =
    std::function<void(std::string_view action, ByteView payload)>;

// Canonical action names appearing in transcripts.
namespace ev
{
inline constexpr std::string_view signup = "signup";
inline constexpr std::string_view oob_exchange = "oob-exchange";
inline constexpr std::string_view secret_provision = "secret-provision";
inline constexpr std::string_view share_request = "share-request";
inline constexpr std::string_view lookup_response = "lookup-response";
inline constexpr std::string_view key_substitution = "key-substitution";
inline constexpr std::string_view encrypt_data = "encrypt-data";
inline constexpr std::string_view deliver_share = "deliver-share";
inline constexpr std::string_view provider_decrypt = "provider-decrypt";
inline constexpr std::string_view reencrypt_forward = "reencrypt-forward";
inline constexpr std::string_view decrypt_share = "decrypt-share";
inline constexpr std::string_view store_blob = "store-blob";
inline constexpr std::string_view create_group = "create-group";
inline constexpr std::string_view publish_share = "publish-share";
inline constexpr std::string_view create_link = "create-link";
inline constexpr std::string_view redeem_link = "redeem-link";
inline constexpr std::string_view provider_read_plaintext =
    "provider-read-plaintext";
// Policy rejections carry their reason: "share-rejected:FingerprintMismatch".
inline constexpr std::string_view share_rejected_prefix = "share-rejected:";
inline constexpr std::string_view accept_rejected_prefix = "accept-rejected:";
} // namespace ev

} // namespace sharesim
