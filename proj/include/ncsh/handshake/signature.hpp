#pragma once

#include <vector>

#include "ncsh/bytes.hpp"
#include "ncsh/primitives/rsa.hpp"

namespace ncsh::handshake {

using ffmath::BigUint;
using primitives::RsaKeyPair;
using primitives::RsaPublicKey;

// Literal mode: "signing" applies the signer's private exponent to each
// ciphertext block, M1 = D_A(E_B(M)). Every block must fit under the signer's
// modulus, so signer.n must exceed the recipient modulus; otherwise this
// throws incompatible-moduli.
std::vector<BigUint> sign_literal(const RsaKeyPair& signer, const std::vector<BigUint>& ct_blocks,
                                  const BigUint& recipient_n);

// Applies the signer's public exponent, recovering E_B(M) from M1. A block
// outside the signer's modulus throws corrupt-signature.
std::vector<BigUint> verify_literal(const RsaPublicKey& signer_public, const std::vector<BigUint>& m1_blocks);

// Digest mode: one block, D_A(SHA-1(data) mod n_A).
std::vector<BigUint> sign_digest(const RsaKeyPair& signer, ByteView data);

// Never throws for well-formed keys; any mismatch or malformed signature is false.
bool verify_digest(const RsaPublicKey& signer_public, ByteView data, const std::vector<BigUint>& signature);

// E(x) * E(y) = E(x * y) mod n for textbook RSA. Requires x, y < n.
bool homomorphic_product_check(const RsaPublicKey& pub, const BigUint& x, const BigUint& y);

} // namespace ncsh::handshake
