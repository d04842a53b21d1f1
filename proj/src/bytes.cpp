// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/bytes.hpp"
#include "sharesim/error.hpp"

namespace sharesim
{

Bytes str_bytes(std::string_view s)
{
    return Bytes(s.begin(), s.end());
}

std::string bytes_str(ByteView b)
{
    return std::string(b.begin(), b.end());
}

namespace
{
const char k_hex_digits[] = "0123456789abcdef";

int hex_val(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

const char k_b64_alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_val(char c)
{
    if (c >= 'A' && c <= 'Z')
        return c - 'A';
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 26;
    if (c >= '0' && c <= '9')
        return c - '0' + 52;
    if (c == '+')
        return 62;
    if (c == '/')
        return 63;
    return -1;
}
} // namespace

std::string to_hex(ByteView b)
{
    std::string out;
    out.reserve(b.size() * 2);
    for (auto v : b)
    {
        out.push_back(k_hex_digits[v >> 4]);
        out.push_back(k_hex_digits[v & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw SimError(Err::ParameterError, "hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
    {
        int hi = hex_val(hex[i]);
        int lo = hex_val(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw SimError(Err::ParameterError, "invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::string base64_encode(ByteView b)
{
    std::string out;
    out.reserve((b.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= b.size(); i += 3)
    {
        std::uint32_t v = (b[i] << 16) | (b[i + 1] << 8) | b[i + 2];
        out.push_back(k_b64_alphabet[(v >> 18) & 63]);
        out.push_back(k_b64_alphabet[(v >> 12) & 63]);
        out.push_back(k_b64_alphabet[(v >> 6) & 63]);
        out.push_back(k_b64_alphabet[v & 63]);
    }
    std::size_t rem = b.size() - i;
    if (rem == 1)
    {
        std::uint32_t v = b[i] << 16;
        out.push_back(k_b64_alphabet[(v >> 18) & 63]);
        out.push_back(k_b64_alphabet[(v >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    }
    else if (rem == 2)
    {
        std::uint32_t v = (b[i] << 16) | (b[i + 1] << 8);
        out.push_back(k_b64_alphabet[(v >> 18) & 63]);
        out.push_back(k_b64_alphabet[(v >> 12) & 63]);
        out.push_back(k_b64_alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

Bytes base64_decode(std::string_view text)
{
    if (text.size() % 4 != 0)
        throw SimError(Err::ParameterError, "base64 length not a multiple of 4");
    Bytes out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4)
    {
        int pad = 0;
        std::uint32_t v = 0;
        for (std::size_t j = 0; j < 4; ++j)
        {
            char c = text[i + j];
            if (c == '=')
            {
                // Padding is only valid in the final one or two positions.
                if (i + 4 != text.size() || j < 2)
                    throw SimError(Err::ParameterError, "misplaced base64 padding");
                ++pad;
                v <<= 6;
                continue;
            }
            if (pad > 0)
                throw SimError(Err::ParameterError, "data after base64 padding");
            int d = b64_val(c);
            if (d < 0)
                throw SimError(Err::ParameterError, "invalid base64 character");
            v = (v << 6) | static_cast<std::uint32_t>(d);
        }
        out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
        if (pad < 2)
            out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
        if (pad < 1)
            out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
    return out;
}

bool ct_equal(ByteView a, ByteView b)
{
    if (a.size() != b.size())
        return false;
    unsigned char acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc |= static_cast<unsigned char>(a[i] ^ b[i]);
    return acc == 0;
}

Bytes concat(ByteView a, ByteView b)
{
    Bytes out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

const char* err_name(Err e)
{
    switch (e)
    {
    case Err::ParameterError:
        return "ParameterError";
    case Err::IntegrityError:
        return "IntegrityError";
    case Err::NotARecipient:
        return "NotARecipient";
    case Err::SenderSignatureInvalid:
        return "SenderSignatureInvalid";
    case Err::UsageViolation:
        return "UsageViolation";
    case Err::DuplicateUser:
        return "DuplicateUser";
    case Err::UnknownUser:
        return "UnknownUser";
    case Err::UnknownBlob:
        return "UnknownBlob";
    case Err::OwnerNotMember:
        return "OwnerNotMember";
    case Err::UnknownLink:
        return "UnknownLink";
    case Err::BadPassword:
        return "BadPassword";
    case Err::ConfigError:
        return "ConfigError";
    }
    return "UnknownError";
}

} // namespace sharesim
