// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"

#include <array>
#include <compare>

namespace sharesim
{

using Digest32 = std::array<std::uint8_t, 32>;

Digest32 sha256(ByteView data);
Digest32 hmac_sha256(ByteView key, ByteView msg);

Bytes digest_bytes(const Digest32& d);
std::string digest_hex(const Digest32& d);
Digest32 digest_from_hex(std::string_view hex); // throws ParameterError unless 64 hex digits

// A public-key fingerprint is the SHA-256 of the key's canonical encoding.
// Ordered so it can key std::map tables (pinning stores, etc).
struct Fingerprint
{
    Digest32 digest{};

    auto operator<=>(const Fingerprint&) const = default;

    std::string hex() const
    {
        return digest_hex(digest);
    }
};

} // namespace sharesim
