// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"
#include "sharesim/hash.hpp"
#include "sharesim/rng.hpp"

#include <gmpxx.h>

namespace sharesim
{

// RSA with PKCS#1 v1.5-style padding, built directly on bignum arithmetic so
// that key generation is a pure function of the injected DetRng. Two modulus
// sizes are supported: 512-bit toy keys for fast test sweeps and 2048-bit
// default keys. Anything else is rejected.

constexpr unsigned k_toy_key_bits = 512;
constexpr unsigned k_default_key_bits = 2048;

struct PublicKey
{
    mpz_class n;
    mpz_class e;

    friend bool operator==(const PublicKey& a, const PublicKey& b)
    {
        return a.n == b.n && a.e == b.e;
    }

    unsigned bits() const
    {
        return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    }
};

struct PrivateKey
{
    mpz_class n;
    mpz_class e;
    mpz_class d;

    friend bool operator==(const PrivateKey& a, const PrivateKey& b)
    {
        return a.n == b.n && a.e == b.e && a.d == b.d;
    }
};

struct KeyPair
{
    PublicKey pub;
    PrivateKey priv;
    unsigned bits = 0;
};

// Deterministic: the same (bits, rng state) always yields the same pair.
// Throws ParameterError unless bits is 512 or 2048.
KeyPair generate_keypair(unsigned bits, DetRng& rng);

Bytes encode_public_key(const PublicKey& pub);
PublicKey decode_public_key(ByteView encoded);

// SHA-256 over the canonical public key encoding.
Fingerprint key_fingerprint(const PublicKey& pub);

// Wraps a 32-byte content key under the public key (randomized padding drawn
// from rng). Output is always exactly the modulus length.
Bytes wrap_key(const PublicKey& pub, ByteView content_key, DetRng& rng);

// Recovers a wrapped content key. Any structural failure (wrong length, bad
// padding, wrong private key) throws IntegrityError; callers cannot tell a
// tampered blob from a key mismatch.
Bytes unwrap_key(const PrivateKey& priv, ByteView wrapped);

// Deterministic signature over sha256(msg). Output is the modulus length.
Bytes sign_message(const PrivateKey& priv, ByteView msg);

// Returns false on any mismatch or malformed input; never throws.
bool verify_signature(const PublicKey& pub, ByteView msg, ByteView sig);

} // namespace sharesim
