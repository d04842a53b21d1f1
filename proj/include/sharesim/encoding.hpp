// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"
#include "sharesim/error.hpp"

#include <cstdint>

namespace sharesim
{

// Canonical wire encoding: fixed field order, u32 big-endian length prefixes,
// integers big-endian. Two structurally equal values always encode to the
// same bytes; signatures and fingerprints are computed over these encodings.

class ByteWriter
{
  public:
    void u8(std::uint8_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i64(std::int64_t v); // two's complement, big-endian
    void raw(ByteView b);
    void field(ByteView b); // u32 length prefix + bytes
    void str(std::string_view s);

    Bytes take();

  private:
    Bytes m_out;
};

class ByteReader
{
  public:
    explicit ByteReader(ByteView in) : m_in(in)
    {
    }

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64();
    Bytes field();
    std::string str();

    bool done() const
    {
        return m_pos == m_in.size();
    }

    // Trailing garbage after the last field is a malformed encoding.
    void expect_done() const;

  private:
    void need(std::size_t n) const; // throws ParameterError if short

    ByteView m_in;
    std::size_t m_pos = 0;
};

} // namespace sharesim
