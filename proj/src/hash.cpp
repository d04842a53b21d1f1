// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/hash.hpp"
#include "sharesim/error.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace sharesim
{

Digest32 sha256(ByteView data)
{
    Digest32 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                   nullptr) != 1 ||
        len != out.size())
    {
        throw SimError(Err::IntegrityError, "SHA-256 computation failed");
    }
    return out;
}

Digest32 hmac_sha256(ByteView key, ByteView msg)
{
    Digest32 out{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(),
             msg.size(), out.data(), &len) == nullptr ||
        len != out.size())
    {
        throw SimError(Err::IntegrityError, "HMAC-SHA256 computation failed");
    }
    return out;
}

Bytes digest_bytes(const Digest32& d)
{
    return Bytes(d.begin(), d.end());
}

std::string digest_hex(const Digest32& d)
{
    return to_hex(ByteView(d.data(), d.size()));
}

Digest32 digest_from_hex(std::string_view hex)
{
    Bytes raw = from_hex(hex);
    if (raw.size() != 32)
        throw SimError(Err::ParameterError, "digest must be 32 bytes");
    Digest32 out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

} // namespace sharesim
