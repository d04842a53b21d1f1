// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/rsa.hpp"
#include "sharesim/encoding.hpp"
#include "sharesim/error.hpp"

#include <mutex>
#include <vector>

namespace sharesim
{

namespace
{

Bytes mpz_to_bytes(const mpz_class& v)
{
    if (v == 0)
        return {};
    Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    std::size_t count = 0;
    mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(count);
    return out;
}

// Fixed-width big-endian export, left-padded with zeros. Ciphertexts and
// signatures always occupy exactly the modulus length.
Bytes mpz_to_bytes_fixed(const mpz_class& v, std::size_t width)
{
    Bytes minimal = mpz_to_bytes(v);
    if (minimal.size() > width)
        throw SimError(Err::ParameterError, "value exceeds fixed width");
    Bytes out(width, 0);
    std::copy(minimal.begin(), minimal.end(),
              out.begin() + (width - minimal.size()));
    return out;
}

mpz_class bytes_to_mpz(ByteView b)
{
    mpz_class v;
    if (!b.empty())
        mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return v;
}

const std::vector<unsigned long>& small_primes()
{
    static std::vector<unsigned long> primes;
    static std::once_flag once;
    std::call_once(once, [] {
        std::vector<bool> composite(2000, false);
        for (unsigned long p = 2; p < composite.size(); ++p)
        {
            if (composite[p])
                continue;
            primes.push_back(p);
            for (unsigned long q = p * p; q < composite.size(); q += p)
                composite[q] = true;
        }
    });
    return primes;
}

bool passes_trial_division(const mpz_class& v)
{
    for (unsigned long p : small_primes())
    {
        if (mpz_cmp_ui(v.get_mpz_t(), p) == 0)
            return true;
        if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0)
            return false;
    }
    return true;
}

// Miller-Rabin with bases drawn from the caller's rng: deterministic for a
// given stream. 28 rounds puts the residual error near 2^-56, far below
// anything the simulator could notice.
bool miller_rabin(const mpz_class& n, int rounds, DetRng& rng)
{
    mpz_class nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d;
    mpz_fdiv_q_2exp(d.get_mpz_t(), nm1.get_mpz_t(), s);

    std::size_t draw = (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8 + 8;
    for (int i = 0; i < rounds; ++i)
    {
        mpz_class a = bytes_to_mpz(rng.bytes(draw));
        a = 2 + a % (n - 3);
        mpz_class x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1)
            continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r)
        {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == nm1)
            {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

mpz_class random_prime(unsigned bits, const mpz_class& e, DetRng& rng)
{
    for (;;)
    {
        Bytes cand = rng.bytes(bits / 8);
        // Top two bits set so the product of two such primes has exactly
        // 2*bits bits; low bit set so the candidate is odd.
        cand[0] |= 0xc0;
        cand.back() |= 0x01;
        mpz_class v = bytes_to_mpz(cand);
        if (!passes_trial_division(v))
            continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), mpz_class(v - 1).get_mpz_t());
        if (g != 1)
            continue;
        if (miller_rabin(v, 28, rng))
            return v;
    }
}

std::size_t modulus_len(const mpz_class& n)
{
    return (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8;
}

} // namespace

KeyPair generate_keypair(unsigned bits, DetRng& rng)
{
    if (bits != k_toy_key_bits && bits != k_default_key_bits)
        throw SimError(Err::ParameterError,
                       "unsupported modulus size " + std::to_string(bits));

    mpz_class e = 65537;
    for (;;)
    {
        mpz_class p = random_prime(bits / 2, e, rng);
        mpz_class q = random_prime(bits / 2, e, rng);
        if (p == q)
            continue;
        mpz_class n = p * q;
        mpz_class lam;
        mpz_lcm(lam.get_mpz_t(), mpz_class(p - 1).get_mpz_t(),
                mpz_class(q - 1).get_mpz_t());
        mpz_class d;
        if (mpz_invert(d.get_mpz_t(), e.get_mpz_t(), lam.get_mpz_t()) == 0)
            continue;

        KeyPair kp;
        kp.pub = PublicKey{n, e};
        kp.priv = PrivateKey{n, e, d};
        kp.bits = bits;
        return kp;
    }
}

Bytes encode_public_key(const PublicKey& pub)
{
    ByteWriter w;
    w.field(mpz_to_bytes(pub.n));
    w.field(mpz_to_bytes(pub.e));
    return w.take();
}

PublicKey decode_public_key(ByteView encoded)
{
    ByteReader r(encoded);
    PublicKey pub;
    pub.n = bytes_to_mpz(r.field());
    pub.e = bytes_to_mpz(r.field());
    r.expect_done();
    if (pub.n == 0 || pub.e == 0)
        throw SimError(Err::ParameterError, "degenerate public key");
    return pub;
}

Fingerprint key_fingerprint(const PublicKey& pub)
{
    return Fingerprint{sha256(encode_public_key(pub))};
}

Bytes wrap_key(const PublicKey& pub, ByteView content_key, DetRng& rng)
{
    std::size_t k = modulus_len(pub.n);
    if (content_key.size() + 11 > k)
        throw SimError(Err::ParameterError, "content key too long for modulus");

    // EM = 00 02 | nonzero padding | 00 | content key
    Bytes em;
    em.reserve(k);
    em.push_back(0x00);
    em.push_back(0x02);
    std::size_t pad = k - 3 - content_key.size();
    for (std::size_t i = 0; i < pad; ++i)
    {
        std::uint8_t b = rng.byte();
        while (b == 0)
            b = rng.byte();
        em.push_back(b);
    }
    em.push_back(0x00);
    em.insert(em.end(), content_key.begin(), content_key.end());

    mpz_class m = bytes_to_mpz(em);
    mpz_class c;
    mpz_powm(c.get_mpz_t(), m.get_mpz_t(), pub.e.get_mpz_t(),
             pub.n.get_mpz_t());
    return mpz_to_bytes_fixed(c, k);
}

Bytes unwrap_key(const PrivateKey& priv, ByteView wrapped)
{
    std::size_t k = modulus_len(priv.n);
    if (wrapped.size() != k)
        throw SimError(Err::IntegrityError, "wrapped key has wrong length");
    mpz_class c = bytes_to_mpz(wrapped);
    if (c >= priv.n)
        throw SimError(Err::IntegrityError, "wrapped key out of range");
    mpz_class m;
    mpz_powm(m.get_mpz_t(), c.get_mpz_t(), priv.d.get_mpz_t(),
             priv.n.get_mpz_t());
    Bytes em = mpz_to_bytes_fixed(m, k);

    if (em[0] != 0x00 || em[1] != 0x02)
        throw SimError(Err::IntegrityError, "bad wrap padding header");
    // Padding must run at least 8 bytes before the 00 separator.
    std::size_t sep = 0;
    for (std::size_t i = 2; i < em.size(); ++i)
    {
        if (em[i] == 0x00)
        {
            sep = i;
            break;
        }
    }
    if (sep < 10)
        throw SimError(Err::IntegrityError, "bad wrap padding structure");
    return Bytes(em.begin() + sep + 1, em.end());
}

namespace
{
// EM = 00 01 | FF.. | 00 | sha256(msg), deterministic for a given message.
Bytes signature_em(ByteView msg, std::size_t k)
{
    Digest32 h = sha256(msg);
    Bytes em;
    em.reserve(k);
    em.push_back(0x00);
    em.push_back(0x01);
    for (std::size_t i = 0; i < k - 3 - h.size(); ++i)
        em.push_back(0xff);
    em.push_back(0x00);
    em.insert(em.end(), h.begin(), h.end());
    return em;
}
} // namespace

Bytes sign_message(const PrivateKey& priv, ByteView msg)
{
    std::size_t k = modulus_len(priv.n);
    if (k < 35 + 8)
        throw SimError(Err::ParameterError, "modulus too small to sign");
    mpz_class m = bytes_to_mpz(signature_em(msg, k));
    mpz_class s;
    mpz_powm(s.get_mpz_t(), m.get_mpz_t(), priv.d.get_mpz_t(),
             priv.n.get_mpz_t());
    return mpz_to_bytes_fixed(s, k);
}

bool verify_signature(const PublicKey& pub, ByteView msg, ByteView sig)
{
    std::size_t k = modulus_len(pub.n);
    if (sig.size() != k || k < 35 + 8)
        return false;
    mpz_class s = bytes_to_mpz(sig);
    if (s >= pub.n)
        return false;
    mpz_class m;
    mpz_powm(m.get_mpz_t(), s.get_mpz_t(), pub.e.get_mpz_t(),
             pub.n.get_mpz_t());
    Bytes em = mpz_to_bytes_fixed(m, k);
    Bytes expect = signature_em(msg, k);
    return ct_equal(em, expect);
}

} // namespace sharesim
