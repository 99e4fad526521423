#include "doctest.h"

#include <set>
#include <vector>

#include "ncsh/error.hpp"
#include "ncsh/ffmath/biguint.hpp"
#include "ncsh/ffmath/field.hpp"
#include "ncsh/ffmath/gf256.hpp"
#include "ncsh/ffmath/prime.hpp"

using namespace ncsh;
using namespace ncsh::ffmath;

namespace {

// Oracles below use plain machine integers and never call into the library.

bool brute_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool brute_prime_power(std::uint64_t q) {
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    while (q % p == 0) q /= p;
    return q == 1;
}

unsigned clmul_reduce(unsigned a, unsigned b) {
    unsigned product = 0;
    for (int i = 0; i < 8; ++i) {
        if (b >> i & 1) product ^= a << i;
    }
    for (int bit = 14; bit >= 8; --bit) {
        if (product >> bit & 1) product ^= 0x11Bu << (bit - 8);
    }
    return product;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ncsh::Error");
    return ErrorCode::io_error;
}

// a*x + b*y evaluated on the non-negative side only.
bool bezout_holds(const BigUint& a, const BigUint& b, const Egcd& r) {
    BigUint pos;
    BigUint neg;
    (r.x.negative ? neg : pos) += a * r.x.magnitude;
    (r.y.negative ? neg : pos) += b * r.y.magnitude;
    return pos >= neg && pos - neg == r.g;
}

} // namespace

TEST_CASE("BigUint encodings and ordering") {
    SeededRandom rng(1);
    for (int i = 0; i < 200; ++i) {
        BigUint v = BigUint::random_bits(rng, 1 + rng.uniform(700));
        CHECK(BigUint::from_bytes_be(v.to_bytes_be()) == v);
        CHECK(BigUint::from_hex(v.is_zero() ? "0" : v.to_hex()) == v);
        CHECK(BigUint::from_decimal(v.to_decimal()) == v);
    }
    CHECK(BigUint().to_bytes_be().empty());
    CHECK(BigUint(0x0102).to_bytes_be(4) == Bytes{0, 0, 1, 2});
    CHECK(code_of([] { (void)BigUint(0x010203).to_bytes_be(2); }) == ErrorCode::block_too_large);
    CHECK(code_of([] { (void)(BigUint(3) - BigUint(5)); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { (void)(BigUint(3) / BigUint()); }) == ErrorCode::invalid_argument);
    CHECK(BigUint(255).bit_length() == 8);
    CHECK(BigUint(256).bit_length() == 9);
    CHECK(BigUint(5) < BigUint(7));
    auto [q, r] = divmod(BigUint(1000), BigUint(7));
    CHECK(q == BigUint(142));
    CHECK(r == BigUint(6));
}

TEST_CASE("field_exists") {
    CHECK(field_exists(11));
    CHECK(field_exists(256));
    CHECK_FALSE(field_exists(12));
    CHECK(code_of([] { field_exists(1); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { field_exists(0); }) == ErrorCode::invalid_argument);
    for (std::uint64_t q = 2; q <= 10000; ++q) {
        REQUIRE_MESSAGE(field_exists(q) == brute_prime_power(q), "q = " << q);
    }
    CHECK(field_exists(std::uint64_t{1} << 63));
    CHECK(field_exists(4294967291ull * 4294967291ull));  // largest 32-bit prime, squared
    CHECK_FALSE(field_exists(4294967291ull * 4294967279ull));
}

TEST_CASE("prime field arithmetic") {
    const PrimeField f11(BigUint(11));
    CHECK(gfp_add(BigUint(0), BigUint(7), f11) == BigUint(7));
    CHECK(gfp_mul(BigUint(7), BigUint(8), f11) == BigUint(1));
    CHECK(gfp_sub(BigUint(3), BigUint(5), f11) == BigUint(9));
    CHECK(code_of([&] { gfp_add(BigUint(11), BigUint(1), f11); }) == ErrorCode::invalid_argument);
    CHECK(code_of([&] { gfp_mul(BigUint(1), BigUint(12), f11); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { PrimeField bad(BigUint(12)); }) == ErrorCode::invalid_argument);

    SUBCASE("exhaustive table for GF(11)") {
        for (std::uint64_t a = 0; a < 11; ++a) {
            for (std::uint64_t b = 0; b < 11; ++b) {
                CHECK(gfp_add(a, b, f11) == BigUint((a + b) % 11));
                CHECK(gfp_sub(a, b, f11) == BigUint((a + 11 - b) % 11));
                CHECK(gfp_mul(a, b, f11) == BigUint(a * b % 11));
            }
        }
    }

    SUBCASE("field axioms on random triples") {
        SeededRandom rng(7);
        const BigUint p = (BigUint(1) << 127) - BigUint(1);  // Mersenne prime
        const PrimeField f(p, rng);
        for (int i = 0; i < 1000; ++i) {
            BigUint a = BigUint::random_below(rng, p);
            BigUint b = BigUint::random_below(rng, p);
            BigUint c = BigUint::random_below(rng, p);
            CHECK(gfp_add(a, b, f) == gfp_add(b, a, f));
            CHECK(gfp_mul(a, b, f) == gfp_mul(b, a, f));
            CHECK(gfp_add(gfp_add(a, b, f), c, f) == gfp_add(a, gfp_add(b, c, f), f));
            CHECK(gfp_mul(gfp_mul(a, b, f), c, f) == gfp_mul(a, gfp_mul(b, c, f), f));
            CHECK(gfp_mul(a, gfp_add(b, c, f), f) == gfp_add(gfp_mul(a, b, f), gfp_mul(a, c, f), f));
            CHECK(gfp_add(gfp_sub(a, b, f), b, f) == a);
            if (!a.is_zero()) CHECK(gfp_mul(a, gfp_inv(a, f), f) == BigUint(1));
        }
    }
}

TEST_CASE("egcd") {
    Egcd base = egcd(BigUint(1), BigUint(0));
    CHECK(base.g == BigUint(1));
    CHECK(base.x == SignedBig::from_i64(1));
    CHECK(base.y == SignedBig::from_i64(0));

    Egcd r = egcd(BigUint(240), BigUint(46));
    CHECK(r.g == BigUint(2));
    CHECK(r.x == SignedBig::from_i64(-9));
    CHECK(r.y == SignedBig::from_i64(47));
    CHECK(bezout_holds(BigUint(240), BigUint(46), r));

    Egcd same = egcd(BigUint(97), BigUint(97));
    CHECK(same.g == BigUint(97));
    CHECK(bezout_holds(BigUint(97), BigUint(97), same));

    CHECK(code_of([] { egcd(BigUint(), BigUint()); }) == ErrorCode::invalid_argument);

    SeededRandom rng(11);
    for (int i = 0; i < 1000; ++i) {
        BigUint a = BigUint::random_bits(rng, 256);
        BigUint b = BigUint::random_bits(rng, 256);
        if (a.is_zero() && b.is_zero()) continue;
        Egcd e = egcd(a, b);
        REQUIRE(bezout_holds(a, b, e));
        CHECK((a % e.g).is_zero());
        CHECK((b % e.g).is_zero());
    }
}

TEST_CASE("mod_inv") {
    CHECK(mod_inv(BigUint(1), BigUint(97)) == BigUint(1));
    CHECK(mod_inv(BigUint(3), BigUint(11)) == BigUint(4));
    CHECK(code_of([] { mod_inv(BigUint(2), BigUint(4)); }) == ErrorCode::not_invertible);
    CHECK(code_of([] { mod_inv(BigUint(0), BigUint(7)); }) == ErrorCode::not_invertible);
    CHECK(code_of([] { mod_inv(BigUint(1), BigUint(1)); }) == ErrorCode::invalid_argument);

    // exhaustive search oracle for 3^-1 mod 11
    std::uint64_t found = 0;
    for (std::uint64_t t = 1; t < 11; ++t) {
        if (3 * t % 11 == 1) found = t;
    }
    CHECK(found == 4);

    for (std::uint64_t p = 2; p <= 251; ++p) {
        if (!brute_is_prime(p)) continue;
        for (std::uint64_t a = 1; a < p; ++a) {
            std::uint64_t t = mod_inv(BigUint(a), BigUint(p)).to_u64();
            REQUIRE(t >= 1);
            REQUIRE(t < p);
            REQUIRE(a * t % p == 1);
        }
    }
}

TEST_CASE("mod_pow") {
    CHECK(mod_pow(BigUint(12345), BigUint(0), BigUint(97)) == BigUint(1));
    CHECK(mod_pow(BigUint(0), BigUint(5), BigUint(7)) == BigUint(0));
    CHECK(mod_pow(BigUint(2), BigUint(10), BigUint(1000)) == BigUint(24));
    CHECK(mod_pow(BigUint(5), BigUint(3), BigUint(1)) == BigUint(0));
    CHECK(code_of([] { mod_pow(BigUint(2), BigUint(2), BigUint(0)); }) == ErrorCode::invalid_argument);

    SeededRandom rng(5);
    for (int i = 0; i < 300; ++i) {
        std::uint64_t base = rng.uniform(1000);
        std::uint64_t exp = rng.uniform(200);
        std::uint64_t n = 1 + rng.uniform(100000);
        std::uint64_t naive = 1 % n;
        for (std::uint64_t k = 0; k < exp; ++k) naive = naive * base % n;
        REQUIRE(mod_pow(BigUint(base), BigUint(exp), BigUint(n)) == BigUint(naive));
    }
    for (int i = 0; i < 200; ++i) {
        BigUint n = BigUint::random_bits(rng, 512) + BigUint(2);
        BigUint a = BigUint::random_below(rng, n);
        BigUint e1 = BigUint::random_bits(rng, 256);
        BigUint e2 = BigUint::random_bits(rng, 256);
        CHECK(mod_pow(a, e1 + e2, n) == (mod_pow(a, e1, n) * mod_pow(a, e2, n)) % n);
    }
}

TEST_CASE("is_probable_prime") {
    SeededRandom rng(3);
    CHECK(is_probable_prime(BigUint(2), 40, rng));
    CHECK_FALSE(is_probable_prime(BigUint(561), 40, rng));
    CHECK(561 == 3 * 11 * 17);
    CHECK(is_probable_prime(BigUint(2147483647), 40, rng));
    CHECK(brute_is_prime(2147483647));
    CHECK_FALSE(is_probable_prime(BigUint(0), 1, rng));
    CHECK_FALSE(is_probable_prime(BigUint(1), 1, rng));
    CHECK(code_of([&] { is_probable_prime(BigUint(7), 0, rng); }) == ErrorCode::invalid_argument);

    for (std::uint64_t n = 0; n < 20000; ++n) {
        REQUIRE_MESSAGE(is_probable_prime(BigUint(n), 20, rng) == brute_is_prime(n), "n = " << n);
    }
    // Carmichael numbers above the trial-division threshold
    for (std::uint64_t c : {2465ull, 2821ull, 6601ull, 8911ull, 41041ull, 825265ull, 321197185ull}) {
        CHECK_FALSE(is_probable_prime(BigUint(c), 40, rng));
    }
    CHECK(is_probable_prime((BigUint(1) << 127) - BigUint(1), 40, rng));
    CHECK_FALSE(is_probable_prime((BigUint(1) << 128) + BigUint(1), 40, rng));
}

TEST_CASE("gen_prime") {
    SeededRandom rng(9);
    std::set<std::uint64_t> eight_bit_primes;
    for (std::uint64_t n = 128; n < 256; ++n) {
        if (brute_is_prime(n)) eight_bit_primes.insert(n);
    }
    CHECK(*eight_bit_primes.begin() == 131);
    CHECK(*eight_bit_primes.rbegin() == 251);
    for (int i = 0; i < 200; ++i) {
        BigUint p = gen_prime(8, rng);
        REQUIRE(eight_bit_primes.count(p.to_u64()) == 1);
    }
    for (std::size_t bits : {9u, 16u, 33u, 64u, 100u, 256u}) {
        BigUint p = gen_prime(bits, rng);
        CHECK(p.bit_length() == bits);
        CHECK(p.is_odd());
        if (bits <= 33) CHECK(brute_is_prime(p.to_u64()));
    }
    std::set<std::string> draws;
    for (int i = 0; i < 100; ++i) draws.insert(gen_prime(64, rng).to_hex());
    CHECK(draws.size() == 100);
    CHECK(code_of([&] { gen_prime(7, rng); }) == ErrorCode::invalid_argument);
}

TEST_CASE("GF(2^8)") {
    for (unsigned x = 0; x < 256; ++x) {
        CHECK(gf256_mul(Gf256{static_cast<std::uint8_t>(x)}, Gf256{1}).value == x);
    }
    CHECK(clmul_reduce(0x80, 0x02) == 0x1B);
    CHECK(gf256_mul(Gf256{0x80}, Gf256{0x02}).value == 0x1B);
    CHECK(clmul_reduce(0x57, 0x83) == 0xC1);
    CHECK(gf256_mul(Gf256{0x57}, Gf256{0x83}).value == 0xC1);
    for (unsigned a = 0; a < 256; ++a) {
        for (unsigned b = 0; b < 256; ++b) {
            REQUIRE(gf256_mul(Gf256{static_cast<std::uint8_t>(a)}, Gf256{static_cast<std::uint8_t>(b)}).value ==
                    clmul_reduce(a, b));
        }
    }
    for (unsigned a = 1; a < 256; ++a) {
        Gf256 x{static_cast<std::uint8_t>(a)};
        REQUIRE(gf256_mul(x, gf256_inv(x)).value == 1);
    }
    CHECK(code_of([] { gf256_inv(Gf256{0}); }) == ErrorCode::no_inverse);
}
