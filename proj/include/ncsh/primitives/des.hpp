#pragma once

#include <array>
#include <cstdint>

#include "ncsh/bytes.hpp"

namespace ncsh::primitives {

using DesBlock = std::array<std::uint8_t, 8>;

// Single DES. The key is 8 octets; the low bit of each octet (parity) is
// ignored by the key schedule.
class Des {
public:
    explicit Des(ByteView key);

    void encrypt_block(const std::uint8_t* in, std::uint8_t* out) const;
    void decrypt_block(const std::uint8_t* in, std::uint8_t* out) const;

private:
    std::uint64_t crypt(std::uint64_t block, bool decrypt) const;

    // 48-bit round keys, split into eight 6-bit groups (MSB group first).
    std::array<std::array<std::uint8_t, 8>, 16> subkeys_{};
};

DesBlock des_encrypt_block(ByteView key, ByteView block);
DesBlock des_decrypt_block(ByteView key, ByteView block);

} // namespace ncsh::primitives
