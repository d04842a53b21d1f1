// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/rng.hpp"
#include "sharesim/error.hpp"

#include <cstring>

namespace sharesim
{

namespace
{
void put_u64be(Bytes& out, std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_u32be(Bytes& out, std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}
} // namespace

DetRng::DetRng(std::uint64_t seed, std::string_view label)
{
    // Key = H(domain-tag || seed || len(label) || label). The length prefix
    // keeps distinct labels from colliding by concatenation.
    Bytes material = str_bytes("sharesim-drbg-v1");
    put_u64be(material, seed);
    put_u32be(material, static_cast<std::uint32_t>(label.size()));
    Bytes lb = str_bytes(label);
    material.insert(material.end(), lb.begin(), lb.end());
    m_key = sha256(material);
}

DetRng::DetRng(const Digest32& key) : m_key(key)
{
}

DetRng DetRng::fork(std::string_view label) const
{
    Bytes material(m_key.begin(), m_key.end());
    Bytes tag = str_bytes("fork");
    material.insert(material.end(), tag.begin(), tag.end());
    put_u32be(material, static_cast<std::uint32_t>(label.size()));
    Bytes lb = str_bytes(label);
    material.insert(material.end(), lb.begin(), lb.end());
    return DetRng(sha256(material));
}

void DetRng::refill()
{
    Bytes material(m_key.begin(), m_key.end());
    put_u64be(material, m_counter++);
    m_block = sha256(material);
    m_pos = 0;
}

Bytes DetRng::bytes(std::size_t n)
{
    Bytes out;
    out.reserve(n);
    while (out.size() < n)
    {
        if (m_pos == m_block.size())
            refill();
        std::size_t take = std::min(n - out.size(), m_block.size() - m_pos);
        out.insert(out.end(), m_block.begin() + m_pos,
                   m_block.begin() + m_pos + take);
        m_pos += take;
    }
    return out;
}

std::uint8_t DetRng::byte()
{
    if (m_pos == m_block.size())
        refill();
    return m_block[m_pos++];
}

std::uint64_t DetRng::u64()
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | byte();
    return v;
}

std::uint64_t DetRng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw SimError(Err::ParameterError, "below() needs a nonzero bound");
    // Rejection sampling over the largest multiple of bound that fits.
    std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;)
    {
        std::uint64_t v = u64();
        if (v < limit)
            return v % bound;
    }
}

} // namespace sharesim
