#include "ncsh/ffmath/biguint.hpp"

#include <ostream>

#include "ncsh/error.hpp"

namespace ncsh::ffmath {

BigUint::BigUint(std::uint64_t v) {
    mpz_import(value_.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
}

BigUint BigUint::from_bytes_be(ByteView bytes) {
    mpz_class v;
    if (!bytes.empty()) {
        mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    }
    return BigUint(std::move(v));
}

BigUint BigUint::from_hex(std::string_view hex) {
    if (hex.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty hex integer");
    }
    for (char c : hex) {
        bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
        if (!ok) throw Error(ErrorCode::invalid_argument, "non-hex character in integer");
    }
    return BigUint(mpz_class(std::string(hex), 16));
}

BigUint BigUint::from_decimal(std::string_view dec) {
    if (dec.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty decimal integer");
    }
    for (char c : dec) {
        if (c < '0' || c > '9') throw Error(ErrorCode::invalid_argument, "non-digit in integer");
    }
    return BigUint(mpz_class(std::string(dec), 10));
}

BigUint BigUint::random_bits(RandomSource& rng, std::size_t bits) {
    if (bits == 0) return {};
    Bytes buf((bits + 7) / 8);
    rng.fill(buf);
    const std::size_t excess = buf.size() * 8 - bits;
    buf[0] &= static_cast<std::uint8_t>(0xFF >> excess);
    return from_bytes_be(buf);
}

BigUint BigUint::random_below(RandomSource& rng, const BigUint& bound) {
    if (bound.is_zero()) {
        throw Error(ErrorCode::invalid_argument, "random_below bound is zero");
    }
    const std::size_t bits = bound.bit_length();
    for (;;) {
        BigUint v = random_bits(rng, bits);
        if (v < bound) return v;
    }
}

Bytes BigUint::to_bytes_be() const {
    Bytes out(byte_length());
    if (!out.empty()) {
        std::size_t written = 0;
        mpz_export(out.data(), &written, 1, 1, 1, 0, value_.get_mpz_t());
    }
    return out;
}

Bytes BigUint::to_bytes_be(std::size_t width) const {
    Bytes minimal = to_bytes_be();
    if (minimal.size() > width) {
        throw Error(ErrorCode::block_too_large, "integer does not fit in " + std::to_string(width) + " octets");
    }
    Bytes out(width - minimal.size(), 0);
    out.insert(out.end(), minimal.begin(), minimal.end());
    return out;
}

std::string BigUint::to_hex() const { return value_.get_str(16); }

std::string BigUint::to_decimal() const { return value_.get_str(10); }

std::size_t BigUint::bit_length() const {
    if (is_zero()) return 0;
    return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool BigUint::test_bit(std::size_t i) const { return mpz_tstbit(value_.get_mpz_t(), i) != 0; }

bool BigUint::is_zero() const { return mpz_sgn(value_.get_mpz_t()) == 0; }

bool BigUint::is_odd() const { return mpz_odd_p(value_.get_mpz_t()) != 0; }

bool BigUint::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) {
        throw Error(ErrorCode::invalid_argument, "integer exceeds 64 bits");
    }
    std::uint64_t v = 0;
    for (std::uint8_t b : to_bytes_be()) v = v << 8 | b;
    return v;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    value_ += rhs.value_;
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (*this < rhs) {
        throw Error(ErrorCode::invalid_argument, "unsigned subtraction underflow");
    }
    value_ -= rhs.value_;
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& rhs) {
    value_ *= rhs.value_;
    return *this;
}

BigUint& BigUint::operator/=(const BigUint& rhs) {
    if (rhs.is_zero()) throw Error(ErrorCode::invalid_argument, "division by zero");
    mpz_tdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

BigUint& BigUint::operator%=(const BigUint& rhs) {
    if (rhs.is_zero()) throw Error(ErrorCode::invalid_argument, "division by zero");
    mpz_tdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

BigUint& BigUint::operator<<=(std::size_t n) {
    mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), n);
    return *this;
}

BigUint& BigUint::operator>>=(std::size_t n) {
    mpz_tdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), n);
    return *this;
}

bool operator==(const BigUint& a, const BigUint& b) { return cmp(a.value_, b.value_) == 0; }

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const BigUint& v) { return os << v.to_decimal(); }

DivMod divmod(const BigUint& a, const BigUint& b) {
    BigUint q = a / b;
    BigUint r = a - q * b;
    return {std::move(q), std::move(r)};
}

SignedBig::SignedBig(bool neg, BigUint mag) : negative(neg && !mag.is_zero()), magnitude(std::move(mag)) {}

SignedBig SignedBig::from_i64(std::int64_t v) {
    if (v >= 0) return SignedBig(false, BigUint(static_cast<std::uint64_t>(v)));
    return SignedBig(true, BigUint(static_cast<std::uint64_t>(-(v + 1)) + 1));
}

SignedBig operator+(const SignedBig& a, const SignedBig& b) {
    if (a.negative == b.negative) {
        return SignedBig(a.negative, a.magnitude + b.magnitude);
    }
    if (a.magnitude >= b.magnitude) {
        return SignedBig(a.negative, a.magnitude - b.magnitude);
    }
    return SignedBig(b.negative, b.magnitude - a.magnitude);
}

SignedBig operator-(const SignedBig& a, const SignedBig& b) {
    return a + SignedBig(!b.negative, b.magnitude);
}

SignedBig operator*(const SignedBig& a, const BigUint& b) {
    return SignedBig(a.negative, a.magnitude * b);
}

std::ostream& operator<<(std::ostream& os, const SignedBig& v) {
    if (v.negative) os << '-';
    return os << v.magnitude;
}

BigUint SignedBig::mod(const BigUint& n) const {
    BigUint r = magnitude % n;
    if (negative && !r.is_zero()) return n - r;
    return r;
}

} // namespace ncsh::ffmath
