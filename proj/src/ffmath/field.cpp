#include "ncsh/ffmath/field.hpp"

#include <array>
#include <cmath>

#include "ncsh/error.hpp"
#include "ncsh/ffmath/prime.hpp"

namespace ncsh::ffmath {

namespace {

// Largest r with r^m <= q.
std::uint64_t integer_root(std::uint64_t q, unsigned m) {
    auto pow_le = [q, m](std::uint64_t r) {
        // r^m <= q without overflow
        std::uint64_t acc = 1;
        for (unsigned i = 0; i < m; ++i) {
            if (acc > q / r) return false;
            acc *= r;
        }
        return true;
    };
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), 1.0 / m));
    if (r == 0) r = 1;
    while (r > 1 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

bool exact_power(std::uint64_t r, unsigned m, std::uint64_t q) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < m; ++i) acc *= r;
    return acc == q;
}

void require_element(const BigUint& a, const PrimeField& field) {
    if (!field.contains(a)) {
        throw Error(ErrorCode::invalid_argument, "operand not reduced modulo p");
    }
}

} // namespace

bool field_exists(std::uint64_t q) {
    if (q < 2) {
        throw Error(ErrorCode::invalid_argument, "field order must be at least 2");
    }
    // q = p^m iff for some m the integer m-th root of q is a prime r with r^m = q.
    for (unsigned m = 1; m < 64; ++m) {
        std::uint64_t r = integer_root(q, m);
        if (r < 2) break;
        if (exact_power(r, m, q) && is_probable_prime(BigUint(r), kKeygenPrimeRounds)) {
            return true;
        }
    }
    return false;
}

PrimeField::PrimeField(BigUint p) : p_(std::move(p)) {
    if (!is_probable_prime(p_, kKeygenPrimeRounds)) {
        throw Error(ErrorCode::invalid_argument, "field modulus is not prime");
    }
}

PrimeField::PrimeField(BigUint p, RandomSource& rng) : p_(std::move(p)) {
    if (!is_probable_prime(p_, kKeygenPrimeRounds, rng)) {
        throw Error(ErrorCode::invalid_argument, "field modulus is not prime");
    }
}

BigUint gfp_add(const BigUint& a, const BigUint& b, const PrimeField& field) {
    require_element(a, field);
    require_element(b, field);
    BigUint c = a + b;
    if (c >= field.modulus()) c -= field.modulus();
    return c;
}

BigUint gfp_sub(const BigUint& a, const BigUint& b, const PrimeField& field) {
    require_element(a, field);
    require_element(b, field);
    if (a >= b) return a - b;
    return a + field.modulus() - b;
}

BigUint gfp_mul(const BigUint& a, const BigUint& b, const PrimeField& field) {
    require_element(a, field);
    require_element(b, field);
    return (a * b) % field.modulus();
}

BigUint gfp_inv(const BigUint& a, const PrimeField& field) {
    require_element(a, field);
    return mod_inv(a, field.modulus());
}

Egcd egcd(const BigUint& a, const BigUint& b) {
    if (a.is_zero() && b.is_zero()) {
        throw Error(ErrorCode::invalid_argument, "egcd(0, 0) is undefined");
    }
    BigUint old_r = a;
    BigUint r = b;
    SignedBig old_s = SignedBig::from_i64(1);
    SignedBig s;
    SignedBig old_t;
    SignedBig t = SignedBig::from_i64(1);
    while (!r.is_zero()) {
        auto [q, rem] = divmod(old_r, r);
        old_r = std::exchange(r, std::move(rem));
        SignedBig next_s = old_s - s * q;
        old_s = std::exchange(s, std::move(next_s));
        SignedBig next_t = old_t - t * q;
        old_t = std::exchange(t, std::move(next_t));
    }
    return {std::move(old_r), std::move(old_s), std::move(old_t)};
}

BigUint gcd(const BigUint& a, const BigUint& b) {
    BigUint x = a;
    BigUint y = b;
    while (!y.is_zero()) {
        BigUint r = x % y;
        x = std::exchange(y, std::move(r));
    }
    return x;
}

BigUint mod_inv(const BigUint& a, const BigUint& n) {
    if (n < BigUint(2)) {
        throw Error(ErrorCode::invalid_argument, "modulus must be at least 2");
    }
    BigUint reduced = a % n;
    if (reduced.is_zero()) {
        throw Error(ErrorCode::not_invertible, "zero has no inverse");
    }
    Egcd e = egcd(reduced, n);
    if (e.g != BigUint(1)) {
        throw Error(ErrorCode::not_invertible, "gcd(a, n) = " + e.g.to_decimal());
    }
    return e.x.mod(n);
}

BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& n) {
    if (n.is_zero()) {
        throw Error(ErrorCode::invalid_argument, "mod_pow modulus is zero");
    }
    if (n == BigUint(1)) return {};

    // Square-and-multiply over fixed 4-bit windows of the exponent: the table
    // holds base^0 .. base^15 and each window costs four squarings plus at
    // most one multiplication.
    constexpr std::size_t kWindow = 4;
    std::array<BigUint, 1u << kWindow> powers;
    powers[0] = BigUint(1);
    powers[1] = base % n;
    for (std::size_t i = 2; i < powers.size(); ++i) {
        powers[i] = powers[i - 1];
        powers[i] *= powers[1];
        powers[i] %= n;
    }

    BigUint acc(1);
    const std::size_t windows = (exp.bit_length() + kWindow - 1) / kWindow;
    for (std::size_t w = windows; w-- > 0;) {
        for (std::size_t k = 0; k < kWindow; ++k) {
            acc *= acc;
            acc %= n;
        }
        unsigned digit = 0;
        for (std::size_t k = kWindow; k-- > 0;) {
            digit = digit << 1 | (exp.test_bit(w * kWindow + k) ? 1u : 0u);
        }
        if (digit != 0) {
            acc *= powers[digit];
            acc %= n;
        }
    }
    return acc;
}

} // namespace ncsh::ffmath
