// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sharesim
{

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Copies the characters of a string into a byte buffer (and back). All
// identities and labels in the wire encodings travel as raw UTF-8 bytes.
Bytes str_bytes(std::string_view s);
std::string bytes_str(ByteView b);

std::string to_hex(ByteView b);
Bytes from_hex(std::string_view hex); // throws ParameterError on odd length or non-hex digits

std::string base64_encode(ByteView b);
Bytes base64_decode(std::string_view text); // throws ParameterError on malformed input

// Constant-time comparison. Used wherever an authenticator is checked, so a
// mismatch costs the same regardless of where the first differing byte sits.
bool ct_equal(ByteView a, ByteView b);

Bytes concat(ByteView a, ByteView b);

} // namespace sharesim
