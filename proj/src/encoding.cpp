// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/encoding.hpp"

#include <limits>

namespace sharesim
{

void ByteWriter::u8(std::uint8_t v)
{
    m_out.push_back(v);
}

void ByteWriter::u32(std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        m_out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void ByteWriter::u64(std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        m_out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void ByteWriter::i64(std::int64_t v)
{
    u64(static_cast<std::uint64_t>(v));
}

void ByteWriter::raw(ByteView b)
{
    m_out.insert(m_out.end(), b.begin(), b.end());
}

void ByteWriter::field(ByteView b)
{
    if (b.size() > std::numeric_limits<std::uint32_t>::max())
        throw SimError(Err::ParameterError, "field too long to encode");
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b);
}

void ByteWriter::str(std::string_view s)
{
    field(str_bytes(s));
}

Bytes ByteWriter::take()
{
    return std::move(m_out);
}

void ByteReader::need(std::size_t n) const
{
    if (m_in.size() - m_pos < n)
        throw SimError(Err::ParameterError, "truncated encoding");
}

std::uint8_t ByteReader::u8()
{
    need(1);
    return m_in[m_pos++];
}

std::uint32_t ByteReader::u32()
{
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v = (v << 8) | m_in[m_pos++];
    return v;
}

std::uint64_t ByteReader::u64()
{
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | m_in[m_pos++];
    return v;
}

std::int64_t ByteReader::i64()
{
    return static_cast<std::int64_t>(u64());
}

Bytes ByteReader::field()
{
    std::uint32_t len = u32();
    need(len);
    Bytes out(m_in.begin() + m_pos, m_in.begin() + m_pos + len);
    m_pos += len;
    return out;
}

std::string ByteReader::str()
{
    Bytes b = field();
    return bytes_str(b);
}

void ByteReader::expect_done() const
{
    if (!done())
        throw SimError(Err::ParameterError, "trailing bytes after encoding");
}

} // namespace sharesim
