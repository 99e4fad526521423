#pragma once

#include <cstdint>

#include "ncsh/ffmath/biguint.hpp"

namespace ncsh::ffmath {

// True iff a finite field with q elements exists, i.e. q = p^m for a prime p
// and m >= 1. Throws invalid-argument for q < 2.
bool field_exists(std::uint64_t q);

// The prime field GF(p). Construction checks primality (40 Miller-Rabin rounds).
class PrimeField {
public:
    explicit PrimeField(BigUint p);
    PrimeField(BigUint p, RandomSource& rng);

    const BigUint& modulus() const noexcept { return p_; }
    bool contains(const BigUint& a) const { return a < p_; }

private:
    BigUint p_;
};

BigUint gfp_add(const BigUint& a, const BigUint& b, const PrimeField& field);
BigUint gfp_sub(const BigUint& a, const BigUint& b, const PrimeField& field);
BigUint gfp_mul(const BigUint& a, const BigUint& b, const PrimeField& field);
// a^-1 in GF(p); throws not-invertible for a = 0.
BigUint gfp_inv(const BigUint& a, const PrimeField& field);

struct Egcd {
    BigUint g;
    SignedBig x;
    SignedBig y;
};

// Extended Euclid: g = gcd(a, b) and a*x + b*y = g. Throws invalid-argument
// when both inputs are zero.
Egcd egcd(const BigUint& a, const BigUint& b);

BigUint gcd(const BigUint& a, const BigUint& b);

// t in [1, n) with a*t = 1 (mod n). Throws not-invertible if gcd(a, n) != 1,
// invalid-argument if n < 2.
BigUint mod_inv(const BigUint& a, const BigUint& n);

// base^exp mod n by left-to-right square-and-multiply. Throws invalid-argument
// for n = 0.
BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& n);

} // namespace ncsh::ffmath
