#pragma once

#include <vector>

#include "ncsh/bytes.hpp"
#include "ncsh/primitives/rsa.hpp"
#include "ncsh/types.hpp"

namespace ncsh::handshake {

using ffmath::BigUint;
using primitives::RsaPublicKey;

// The unit carried by a DATA message.
//
// AES/DES suites: `ciphertext` is the CBC output under a fresh session key,
// `wrapped_key` that key encrypted blockwise under the recipient's public key
// and `iv` one cipher block. RSA suite: `ciphertext` is the blockwise RSA
// ciphertext serialized at the recipient modulus width; `wrapped_key` and `iv`
// are empty. The signature always covers signed_material().
struct Envelope {
    CipherSuite suite = CipherSuite::AES;
    SigMode sig_mode = SigMode::DIGEST;
    RsaPublicKey sender_public;
    std::vector<BigUint> wrapped_key;
    Bytes iv;
    Bytes ciphertext;
    std::vector<BigUint> signature;

    friend bool operator==(const Envelope&, const Envelope&) = default;
};

// count(2 BE), then per block len(4 BE) + minimal big-endian magnitude.
void put_block_list(Bytes& out, const std::vector<BigUint>& blocks);
std::vector<BigUint> read_block_list(ByteReader& in);

// suite | sig_mode | wrapped blocks | iv_len(1)+iv | ct_len(4 BE)+ct
Bytes signed_material(const Envelope& env);

} // namespace ncsh::handshake
