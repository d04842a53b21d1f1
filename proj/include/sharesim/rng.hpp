// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"
#include "sharesim/hash.hpp"

#include <cstdint>
#include <string_view>

namespace sharesim
{

// Deterministic byte generator: SHA-256 in counter mode over a derived key.
// Every randomized operation in the simulator draws from one of these, so a
// (seed, label) pair pins an entire run down to the byte level. fork() derives
// an independent child stream; the child is a pure function of the parent key
// and the label, never of how much the parent has already produced.
class DetRng
{
  public:
    DetRng(std::uint64_t seed, std::string_view label = {});

    Bytes bytes(std::size_t n);
    std::uint8_t byte();
    std::uint64_t u64();

    // Uniform draw in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    DetRng fork(std::string_view label) const;

  private:
    explicit DetRng(const Digest32& key);

    void refill();

    Digest32 m_key{};
    std::uint64_t m_counter = 0;
    Digest32 m_block{};
    std::size_t m_pos = sizeof(Digest32); // empty until first refill
};

} // namespace sharesim
