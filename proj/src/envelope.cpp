// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "sharesim/envelope.hpp"
#include "sharesim/encoding.hpp"
#include "sharesim/error.hpp"

#include <openssl/evp.h>

#include <memory>
#include <set>

namespace sharesim
{

SymmetricKey SymmetricKey::random(DetRng& rng)
{
    SymmetricKey k;
    Bytes b = rng.bytes(k.key.size());
    std::copy(b.begin(), b.end(), k.key.begin());
    return k;
}

SymmetricKey SymmetricKey::from_bytes(ByteView b)
{
    SymmetricKey k;
    if (b.size() != k.key.size())
        throw SimError(Err::ParameterError, "symmetric key must be 32 bytes");
    std::copy(b.begin(), b.end(), k.key.begin());
    return k;
}

namespace
{

constexpr std::size_t k_nonce_len = 16;
constexpr std::size_t k_tag_len = 32;

Digest32 enc_subkey(const SymmetricKey& key)
{
    return hmac_sha256(key.view(), str_bytes("sealed-blob/enc"));
}

Digest32 mac_subkey(const SymmetricKey& key)
{
    return hmac_sha256(key.view(), str_bytes("sealed-blob/mac"));
}

Bytes aes256_cfb(const Digest32& key, ByteView iv, ByteView input, bool encrypt)
{
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
        EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx)
        throw SimError(Err::IntegrityError, "cipher context allocation failed");

    if (EVP_CipherInit_ex(ctx.get(), EVP_aes_256_cfb128(), nullptr, key.data(),
                          iv.data(), encrypt ? 1 : 0) != 1)
        throw SimError(Err::IntegrityError, "cipher init failed");

    Bytes out(input.size() + 16);
    int n1 = 0;
    if (EVP_CipherUpdate(ctx.get(), out.data(), &n1, input.data(),
                         static_cast<int>(input.size())) != 1)
        throw SimError(Err::IntegrityError, "cipher update failed");
    int n2 = 0;
    if (EVP_CipherFinal_ex(ctx.get(), out.data() + n1, &n2) != 1)
        throw SimError(Err::IntegrityError, "cipher final failed");
    out.resize(static_cast<std::size_t>(n1) + static_cast<std::size_t>(n2));
    return out;
}

Digest32 blob_tag(const Digest32& mac_key, const SealedBlob& blob)
{
    return hmac_sha256(ByteView(mac_key.data(), mac_key.size()),
                       concat(blob.nonce, blob.ciphertext));
}

} // namespace

SealedBlob sym_seal(const SymmetricKey& key, ByteView plaintext, DetRng& rng)
{
    SealedBlob blob;
    blob.nonce = rng.bytes(k_nonce_len);
    blob.ciphertext = aes256_cfb(enc_subkey(key), blob.nonce, plaintext, true);
    Digest32 tag = blob_tag(mac_subkey(key), blob);
    blob.tag = digest_bytes(tag);
    return blob;
}

Bytes sym_open(const SymmetricKey& key, const SealedBlob& blob)
{
    if (blob.nonce.size() != k_nonce_len || blob.tag.size() != k_tag_len)
        throw SimError(Err::IntegrityError, "malformed sealed blob");
    Digest32 expect = blob_tag(mac_subkey(key), blob);
    if (!ct_equal(blob.tag, ByteView(expect.data(), expect.size())))
        throw SimError(Err::IntegrityError, "sealed blob authentication failed");
    return aes256_cfb(enc_subkey(key), blob.nonce, blob.ciphertext, false);
}

Bytes encode_sealed_blob(const SealedBlob& blob)
{
    ByteWriter w;
    w.field(blob.nonce);
    w.field(blob.ciphertext);
    w.field(blob.tag);
    return w.take();
}

SealedBlob decode_sealed_blob(ByteView encoded)
{
    ByteReader r(encoded);
    SealedBlob blob;
    blob.nonce = r.field();
    blob.ciphertext = r.field();
    blob.tag = r.field();
    r.expect_done();
    return blob;
}

Bytes envelope_signing_payload(const EncryptedEnvelope& env)
{
    ByteWriter w;
    w.field(encode_sealed_blob(env.sealed));
    w.u32(static_cast<std::uint32_t>(env.wrapped_keys.size()));
    for (const auto& [id, wrapped] : env.wrapped_keys)
    {
        w.str(id);
        w.field(wrapped);
    }
    return w.take();
}

EncryptedEnvelope seal_envelope_with_key(
    const std::string& sender_id, const PrivateKey& sender_priv,
    const SymmetricKey& content_key, ByteView plaintext,
    const std::vector<Recipient>& recipients, DetRng& rng)
{
    if (recipients.empty())
        throw SimError(Err::ParameterError, "envelope needs recipients");
    std::set<std::string> seen;
    for (const auto& r : recipients)
    {
        if (!seen.insert(r.id).second)
            throw SimError(Err::ParameterError,
                           "duplicate recipient " + r.id);
    }

    EncryptedEnvelope env;
    env.sender_id = sender_id;
    env.sealed = sym_seal(content_key, plaintext, rng);

    // Wrap in identity order so the padding bytes drawn from rng, and hence
    // the whole envelope, are independent of the caller's list order.
    std::map<std::string, const PublicKey*> ordered;
    for (const auto& r : recipients)
        ordered.emplace(r.id, &r.pub);
    for (const auto& [id, pub] : ordered)
        env.wrapped_keys[id] = wrap_key(*pub, content_key.view(), rng);

    env.sender_signature =
        sign_message(sender_priv, envelope_signing_payload(env));
    return env;
}

EncryptedEnvelope seal_envelope(const std::string& sender_id,
                                const PrivateKey& sender_priv,
                                ByteView plaintext,
                                const std::vector<Recipient>& recipients,
                                DetRng& rng)
{
    SymmetricKey content_key = SymmetricKey::random(rng);
    return seal_envelope_with_key(sender_id, sender_priv, content_key,
                                  plaintext, recipients, rng);
}

SymmetricKey unwrap_content_key(const PrivateKey& my_priv,
                                const std::string& my_id,
                                const EncryptedEnvelope& env)
{
    auto it = env.wrapped_keys.find(my_id);
    if (it == env.wrapped_keys.end())
        throw SimError(Err::NotARecipient,
                       my_id + " is not an envelope recipient");
    Bytes raw = unwrap_key(my_priv, it->second);
    if (raw.size() != 32)
        throw SimError(Err::IntegrityError, "unwrapped key has wrong length");
    return SymmetricKey::from_bytes(raw);
}

Bytes open_envelope(const PrivateKey& my_priv, const std::string& my_id,
                    const EncryptedEnvelope& env,
                    const PublicKey& expected_sender_pub)
{
    if (!verify_signature(expected_sender_pub, envelope_signing_payload(env),
                          env.sender_signature))
        throw SimError(Err::SenderSignatureInvalid,
                       "envelope signature does not verify under " +
                           env.sender_id);
    SymmetricKey content_key = unwrap_content_key(my_priv, my_id, env);
    return sym_open(content_key, env.sealed);
}

Bytes encode_envelope(const EncryptedEnvelope& env)
{
    ByteWriter w;
    w.str(env.sender_id);
    w.raw(envelope_signing_payload(env));
    w.field(env.sender_signature);
    return w.take();
}

EncryptedEnvelope decode_envelope(ByteView encoded)
{
    ByteReader r(encoded);
    EncryptedEnvelope env;
    env.sender_id = r.str();
    Bytes sealed = r.field();
    env.sealed = decode_sealed_blob(sealed);
    std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i)
    {
        std::string id = r.str();
        Bytes wrapped = r.field();
        if (!env.wrapped_keys.emplace(id, std::move(wrapped)).second)
            throw SimError(Err::ParameterError,
                           "duplicate recipient in envelope encoding");
    }
    env.sender_signature = r.field();
    r.expect_done();
    return env;
}

} // namespace sharesim
