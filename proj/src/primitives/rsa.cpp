#include "ncsh/primitives/rsa.hpp"

#include "ncsh/error.hpp"
#include "ncsh/ffmath/field.hpp"
#include "ncsh/ffmath/prime.hpp"

namespace ncsh::primitives {

using ffmath::gcd;
using ffmath::mod_inv;
using ffmath::mod_pow;

namespace {

const Error& corrupt() {
    static const Error e(ErrorCode::corrupt_ciphertext, "RSA block framing is invalid");
    return e;
}

// Decodes one framed block value back to its chunk. The header is at least 1,
// so the minimal encoding is either header||chunk or (header low)||chunk.
Bytes unframe(const BigUint& m, std::size_t capacity) {
    const Bytes b = m.to_bytes_be();
    for (std::size_t header_len : {std::size_t{1}, std::size_t{2}}) {
        if (b.size() < header_len) continue;
        std::size_t len = header_len == 2 ? std::size_t{b[0]} << 8 | b[1] : b[0];
        if (len == 0 || len > capacity) continue;
        if (b.size() - header_len == len) {
            return Bytes(b.begin() + static_cast<std::ptrdiff_t>(header_len), b.end());
        }
    }
    throw corrupt();
}

} // namespace

SecurityLevel level_for_modulus_bits(std::size_t bits) {
    if (bits >= 2048) return SecurityLevel::L3;
    if (bits >= 1024) return SecurityLevel::L2;
    return SecurityLevel::L1;
}

RsaKeyPair rsa_keypair_from_primes(const BigUint& p, const BigUint& q, SecurityLevel level) {
    if (p == q) {
        throw Error(ErrorCode::invalid_argument, "RSA primes must be distinct");
    }
    const BigUint one(1);
    const BigUint n = p * q;
    const BigUint phi = (p - one) * (q - one);
    for (std::uint64_t candidate : kPublicExponents) {
        BigUint e(candidate);
        if (e >= phi || gcd(e, phi) != one) continue;
        BigUint d = mod_inv(e, phi);
        return RsaKeyPair{n, std::move(e), std::move(d), n.bit_length(), level};
    }
    throw Error(ErrorCode::keygen_failure, "no public exponent is invertible modulo phi(n)");
}

RsaKeyPair rsa_keygen(std::size_t modulus_bits, RandomSource& rng, KeygenMode mode) {
    const bool allowed = modulus_bits == 512 || modulus_bits == 1024 || modulus_bits == 2048 ||
                         (modulus_bits == 32 && mode == KeygenMode::demo);
    if (!allowed) {
        throw Error(ErrorCode::invalid_argument, "unsupported RSA modulus size " + std::to_string(modulus_bits));
    }
    const std::size_t half = modulus_bits / 2;
    const SecurityLevel level = level_for_modulus_bits(modulus_bits);
    for (int attempt = 0; attempt < kKeygenAttempts; ++attempt) {
        BigUint p = ffmath::gen_prime(half, rng);
        BigUint q;
        do {
            q = ffmath::gen_prime(half, rng);
        } while (q == p || (p * q).bit_length() != modulus_bits);
        try {
            return rsa_keypair_from_primes(p, q, level);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::keygen_failure) throw;
        }
    }
    throw Error(ErrorCode::keygen_failure, "exponent inversion failed repeatedly");
}

BigUint rsa_apply(const BigUint& exponent, const BigUint& n, const BigUint& block, BufferMeter* meter) {
    if (block >= n) {
        throw Error(ErrorCode::block_too_large, "RSA block must be smaller than the modulus");
    }
    // accumulator + base + double-width product
    MeterLease working(meter, 4 * n.byte_length());
    return mod_pow(block, exponent, n);
}

std::size_t rsa_chunk_octets(const BigUint& n) {
    const std::size_t bits = n.bit_length();
    return bits < 24 ? 0 : (bits - 16) / 8;
}

std::vector<BigUint> rsa_encrypt_blockwise(const RsaPublicKey& pub, ByteView data, BufferMeter* meter) {
    std::vector<BigUint> blocks;
    const std::size_t capacity = rsa_chunk_octets(pub.n);
    const std::size_t width = pub.n.byte_length();
    MeterLease out_lease(meter, 0);
    if (capacity == 0) {
        for (std::uint8_t octet : data) {
            blocks.push_back(rsa_apply(pub.e, pub.n, BigUint(octet), meter));
            out_lease.grow(width);
        }
        return blocks;
    }
    MeterLease frame_lease(meter, capacity + 2);
    Bytes frame;
    frame.reserve(capacity + 2);
    for (std::size_t off = 0; off < data.size(); off += capacity) {
        const std::size_t len = std::min(capacity, data.size() - off);
        frame.clear();
        put_u16_be(frame, static_cast<std::uint16_t>(len));
        put_bytes(frame, data.subspan(off, len));
        blocks.push_back(rsa_apply(pub.e, pub.n, BigUint::from_bytes_be(frame), meter));
        out_lease.grow(width);
    }
    return blocks;
}

Bytes rsa_decrypt_blockwise(const BigUint& d, const BigUint& n, const std::vector<BigUint>& blocks) {
    const std::size_t capacity = rsa_chunk_octets(n);
    Bytes out;
    for (const BigUint& c : blocks) {
        if (c >= n) throw corrupt();
        BigUint m = mod_pow(c, d, n);
        if (capacity == 0) {
            if (m > BigUint(0xFF)) throw corrupt();
            out.push_back(static_cast<std::uint8_t>(m.to_u64()));
            continue;
        }
        Bytes chunk = unframe(m, capacity);
        put_bytes(out, chunk);
    }
    return out;
}

Bytes serialize_blocks(const std::vector<BigUint>& blocks, std::size_t width) {
    Bytes out;
    out.reserve(blocks.size() * width);
    for (const BigUint& b : blocks) put_bytes(out, b.to_bytes_be(width));
    return out;
}

std::vector<BigUint> parse_blocks(ByteView data, std::size_t width) {
    if (width == 0 || data.size() % width != 0) {
        throw Error(ErrorCode::corrupt_ciphertext, "ciphertext length is not a whole number of blocks");
    }
    std::vector<BigUint> blocks;
    blocks.reserve(data.size() / width);
    for (std::size_t off = 0; off < data.size(); off += width) {
        blocks.push_back(BigUint::from_bytes_be(data.subspan(off, width)));
    }
    return blocks;
}

} // namespace ncsh::primitives
