#pragma once

#include <cstddef>
#include <vector>

#include "ncsh/buffer_meter.hpp"
#include "ncsh/bytes.hpp"
#include "ncsh/ffmath/biguint.hpp"
#include "ncsh/random.hpp"
#include "ncsh/types.hpp"

namespace ncsh::primitives {

using ffmath::BigUint;

struct RsaPublicKey {
    BigUint e;
    BigUint n;

    friend bool operator==(const RsaPublicKey&, const RsaPublicKey&) = default;
};

// Textbook RSA key. Invariants: e*d = 1 mod phi(n), 1 < e < phi(n), n = p*q
// with distinct primes, bit_length(n) = modulus_bits.
struct RsaKeyPair {
    BigUint n;
    BigUint e;
    BigUint d;
    std::size_t modulus_bits = 0;
    SecurityLevel level = SecurityLevel::L1;

    RsaPublicKey public_key() const { return {e, n}; }
};

enum class KeygenMode { standard, demo };

// Public exponents tried in order.
inline constexpr std::uint64_t kPublicExponents[] = {65537, 3, 5, 17};
inline constexpr int kKeygenAttempts = 16;

// modulus_bits must be 512, 1024 or 2048; 32 is accepted in demo mode only.
RsaKeyPair rsa_keygen(std::size_t modulus_bits, RandomSource& rng, KeygenMode mode = KeygenMode::standard);

// Builds a key from caller-chosen primes (demo keys such as p=5, q=11).
// Throws keygen-failure when no candidate exponent is invertible.
RsaKeyPair rsa_keypair_from_primes(const BigUint& p, const BigUint& q, SecurityLevel level = SecurityLevel::L1);

SecurityLevel level_for_modulus_bits(std::size_t bits);

// block^exponent mod n. Throws block-too-large when block >= n.
BigUint rsa_apply(const BigUint& exponent, const BigUint& n, const BigUint& block, BufferMeter* meter = nullptr);

// Plaintext octets carried per RSA block: floor((bits(n) - 16) / 8). Zero
// means the modulus is too small for framed blocks and each octet is sent as
// its own headerless block (tiny demo moduli only).
std::size_t rsa_chunk_octets(const BigUint& n);

// Splits data into framed chunks (2-octet big-endian length, then the chunk)
// and encrypts each under (e, n).
std::vector<BigUint> rsa_encrypt_blockwise(const RsaPublicKey& pub, ByteView data, BufferMeter* meter = nullptr);

// Inverse of rsa_encrypt_blockwise under the private exponent. Blocks >= n or
// broken framing raise corrupt-ciphertext.
Bytes rsa_decrypt_blockwise(const BigUint& d, const BigUint& n, const std::vector<BigUint>& blocks);

// Fixed-width concatenation of blocks (width = byte length of the modulus).
Bytes serialize_blocks(const std::vector<BigUint>& blocks, std::size_t width);
// Throws corrupt-ciphertext when the length is not a multiple of width.
std::vector<BigUint> parse_blocks(ByteView data, std::size_t width);

} // namespace ncsh::primitives
