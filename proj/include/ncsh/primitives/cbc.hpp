#pragma once

#include "ncsh/buffer_meter.hpp"
#include "ncsh/bytes.hpp"
#include "ncsh/random.hpp"
#include "ncsh/types.hpp"

namespace ncsh::primitives {

// Session key for a symmetric suite: 16 octets for AES, 8 for DES.
struct SymmetricKey {
    Bytes bytes;
    CipherSuite suite = CipherSuite::AES;
};

SymmetricKey generate_symmetric_key(CipherSuite suite, RandomSource& rng);

// PKCS#7 padding then CBC chaining. iv must be one block long; suite must be
// AES or DES and match the key.
Bytes cbc_seal(CipherSuite suite, const SymmetricKey& key, ByteView iv, ByteView plaintext,
               BufferMeter* meter = nullptr);

// Inverse of cbc_seal. Any length, padding or chaining inconsistency raises
// the same corrupt-ciphertext error.
Bytes cbc_open(CipherSuite suite, const SymmetricKey& key, ByteView iv, ByteView ciphertext);

} // namespace ncsh::primitives
