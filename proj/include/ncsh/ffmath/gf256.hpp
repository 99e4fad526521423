#pragma once

#include <cstdint>

namespace ncsh::ffmath {

// Element of GF(2^8) = GF(2)[x] / (x^8 + x^4 + x^3 + x + 1).
struct Gf256 {
    std::uint8_t value = 0;

    friend constexpr bool operator==(Gf256, Gf256) = default;
};

inline constexpr unsigned kGf256Modulus = 0x11B;

constexpr Gf256 gf256_add(Gf256 a, Gf256 b) { return {static_cast<std::uint8_t>(a.value ^ b.value)}; }

// Carry-less shift-and-add product, reduced as it goes.
constexpr Gf256 gf256_mul(Gf256 a, Gf256 b) {
    unsigned x = a.value;
    unsigned y = b.value;
    unsigned acc = 0;
    while (y != 0) {
        if (y & 1) acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x & 0x100) x ^= kGf256Modulus;
    }
    return {static_cast<std::uint8_t>(acc)};
}

// Multiplicative inverse; throws no-inverse for zero.
Gf256 gf256_inv(Gf256 a);

} // namespace ncsh::ffmath
