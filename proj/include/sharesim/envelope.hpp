// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "sharesim/bytes.hpp"
#include "sharesim/rng.hpp"
#include "sharesim/rsa.hpp"

#include <map>
#include <string>
#include <vector>

namespace sharesim
{

struct SymmetricKey
{
    std::array<std::uint8_t, 32> key{};

    friend bool operator==(const SymmetricKey& a, const SymmetricKey& b)
    {
        return a.key == b.key;
    }

    static SymmetricKey random(DetRng& rng);
    static SymmetricKey from_bytes(ByteView b); // throws unless exactly 32 bytes

    ByteView view() const
    {
        return ByteView(key.data(), key.size());
    }
};

// Encrypt-then-MAC container: AES-256-CFB128 under an encryption subkey, then
// HMAC-SHA256 of nonce||ciphertext under a MAC subkey. Both subkeys are
// derived from the content key, so possession of the one 32-byte key both
// decrypts and authenticates.
struct SealedBlob
{
    Bytes nonce;      // 16 bytes
    Bytes ciphertext; // same length as the plaintext
    Bytes tag;        // 32 bytes
};

SealedBlob sym_seal(const SymmetricKey& key, ByteView plaintext, DetRng& rng);

// Throws IntegrityError on tag mismatch, truncation, or a wrong key; the
// three cases are indistinguishable by design.
Bytes sym_open(const SymmetricKey& key, const SealedBlob& blob);

Bytes encode_sealed_blob(const SealedBlob& blob);
SealedBlob decode_sealed_blob(ByteView encoded);

struct Recipient
{
    std::string id;
    PublicKey pub;
};

// Hybrid envelope: one sealed payload plus the content key wrapped once per
// recipient, signed by the sender over the payload and the full wrap table.
// Recipient order inside the table is by identity, so equal inputs give
// byte-identical envelopes.
struct EncryptedEnvelope
{
    std::string sender_id;
    SealedBlob sealed;
    std::map<std::string, Bytes> wrapped_keys;
    Bytes sender_signature;
};

// Mints a fresh content key per call. Recipient list must be nonempty and
// free of duplicate identities (ParameterError otherwise).
EncryptedEnvelope seal_envelope(const std::string& sender_id,
                                const PrivateKey& sender_priv,
                                ByteView plaintext,
                                const std::vector<Recipient>& recipients,
                                DetRng& rng);

// Same, but reuses a caller-held content key (folder/group flows where one
// key spans many envelopes and rotates with membership).
EncryptedEnvelope seal_envelope_with_key(const std::string& sender_id,
                                         const PrivateKey& sender_priv,
                                         const SymmetricKey& content_key,
                                         ByteView plaintext,
                                         const std::vector<Recipient>& recipients,
                                         DetRng& rng);

// Checks the sender signature first (SenderSignatureInvalid), then membership
// (NotARecipient), then unwraps and opens (IntegrityError).
Bytes open_envelope(const PrivateKey& my_priv, const std::string& my_id,
                    const EncryptedEnvelope& env,
                    const PublicKey& expected_sender_pub);

// Membership + unwrap only, no signature check. Used where the caller either
// already verified the sender or deliberately ignores it (the malicious
// server's interception path).
SymmetricKey unwrap_content_key(const PrivateKey& my_priv,
                                const std::string& my_id,
                                const EncryptedEnvelope& env);

// The byte string the sender signs: sealed payload plus wrap table.
Bytes envelope_signing_payload(const EncryptedEnvelope& env);

Bytes encode_envelope(const EncryptedEnvelope& env);
EncryptedEnvelope decode_envelope(ByteView encoded);

} // namespace sharesim
