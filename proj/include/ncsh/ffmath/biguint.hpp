#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ncsh/bytes.hpp"
#include "ncsh/random.hpp"

namespace ncsh::ffmath {

// Arbitrary-precision non-negative integer. Limb storage and the raw
// add/sub/mul/divmod kernels come from GMP; everything number-theoretic
// (inverses, exponentiation, primality) is built on top in this module.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v);  // NOLINT(google-explicit-constructor)

    static BigUint from_bytes_be(ByteView bytes);
    static BigUint from_hex(std::string_view hex);
    static BigUint from_decimal(std::string_view dec);
    // Uniform with exactly `bits` random bits (top bit not forced).
    static BigUint random_bits(RandomSource& rng, std::size_t bits);
    // Uniform in [0, bound).
    static BigUint random_below(RandomSource& rng, const BigUint& bound);

    // Minimal big-endian magnitude; zero encodes as an empty string.
    Bytes to_bytes_be() const;
    // Left-padded to `width` octets. Throws block-too-large if it does not fit.
    Bytes to_bytes_be(std::size_t width) const;
    std::string to_hex() const;
    std::string to_decimal() const;

    std::size_t bit_length() const;
    std::size_t byte_length() const { return (bit_length() + 7) / 8; }
    bool test_bit(std::size_t i) const;
    bool is_zero() const;
    bool is_odd() const;
    bool fits_u64() const;
    std::uint64_t to_u64() const;

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs);  // throws invalid-argument on underflow
    BigUint& operator*=(const BigUint& rhs);
    BigUint& operator/=(const BigUint& rhs);  // throws invalid-argument on division by zero
    BigUint& operator%=(const BigUint& rhs);
    BigUint& operator<<=(std::size_t n);
    BigUint& operator>>=(std::size_t n);

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }
    friend BigUint operator/(BigUint a, const BigUint& b) { return a /= b; }
    friend BigUint operator%(BigUint a, const BigUint& b) { return a %= b; }
    friend BigUint operator<<(BigUint a, std::size_t n) { return a <<= n; }
    friend BigUint operator>>(BigUint a, std::size_t n) { return a >>= n; }

    friend bool operator==(const BigUint& a, const BigUint& b);
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

    friend std::ostream& operator<<(std::ostream& os, const BigUint& v);

private:
    explicit BigUint(mpz_class v) : value_(std::move(v)) {}
    mpz_class value_;
};

struct DivMod {
    BigUint quotient;
    BigUint remainder;
};

DivMod divmod(const BigUint& a, const BigUint& b);

// Sign-magnitude integer. Only the extended Euclidean algorithm needs
// negative intermediates, so this stays deliberately small.
struct SignedBig {
    bool negative = false;
    BigUint magnitude;

    SignedBig() = default;
    SignedBig(bool neg, BigUint mag);
    SignedBig(BigUint mag) : SignedBig(false, std::move(mag)) {}  // NOLINT
    static SignedBig from_i64(std::int64_t v);

    friend SignedBig operator+(const SignedBig& a, const SignedBig& b);
    friend SignedBig operator-(const SignedBig& a, const SignedBig& b);
    friend SignedBig operator*(const SignedBig& a, const BigUint& b);
    friend bool operator==(const SignedBig& a, const SignedBig& b) = default;
    friend std::ostream& operator<<(std::ostream& os, const SignedBig& v);

    // Representative in [0, n).
    BigUint mod(const BigUint& n) const;
};

} // namespace ncsh::ffmath
