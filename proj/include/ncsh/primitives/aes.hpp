#pragma once

#include <array>
#include <cstdint>

#include "ncsh/bytes.hpp"

namespace ncsh::primitives {

using AesBlock = std::array<std::uint8_t, 16>;

// S-box built at first use from GF(2^8) inversion followed by the affine map.
const std::array<std::uint8_t, 256>& aes_sbox();
const std::array<std::uint8_t, 256>& aes_inv_sbox();

// AES-128 with an expanded key schedule. Key must be 16 octets.
class Aes128 {
public:
    explicit Aes128(ByteView key);

    void encrypt_block(const std::uint8_t* in, std::uint8_t* out) const;
    void decrypt_block(const std::uint8_t* in, std::uint8_t* out) const;

private:
    std::array<std::uint8_t, 176> round_keys_{};
};

// One-shot helpers; throw invalid-argument on wrong lengths.
AesBlock aes128_encrypt_block(ByteView key, ByteView block);
AesBlock aes128_decrypt_block(ByteView key, ByteView block);

} // namespace ncsh::primitives
