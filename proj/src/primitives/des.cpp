#include "ncsh/primitives/des.hpp"

#include <bit>

#include "ncsh/error.hpp"

namespace ncsh::primitives {

namespace {

// Permutation tables use the 1-based, MSB-first bit numbering of FIPS 46-3.
constexpr std::uint8_t kIp[64] = {
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
    57, 49, 41, 33, 25, 17, 9,  1, 59, 51, 43, 35, 27, 19, 11, 3,
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7};

constexpr std::uint8_t kFp[64] = {
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9,  49, 17, 57, 25};

constexpr std::uint8_t kP[32] = {
    16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
    2,  8, 24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25};

constexpr std::uint8_t kPc1[56] = {
    57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
    10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
    63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
    14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4};

constexpr std::uint8_t kPc2[48] = {
    14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10,
    23, 19, 12, 4,  26, 8,  16, 7,  27, 20, 13, 2,
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32};

constexpr std::uint8_t kShifts[16] = {1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

constexpr std::uint8_t kSbox[8][64] = {
    {14, 4,  13, 1, 2,  15, 11, 8,  3,  10, 6,  12, 5,  9,  0, 7,
     0,  15, 7,  4, 14, 2,  13, 1,  10, 6,  12, 11, 9,  5,  3, 8,
     4,  1,  14, 8, 13, 6,  2,  11, 15, 12, 9,  7,  3,  10, 5, 0,
     15, 12, 8,  2, 4,  9,  1,  7,  5,  11, 3,  14, 10, 0,  6, 13},
    {15, 1,  8,  14, 6,  11, 3,  4,  9,  7, 2,  13, 12, 0, 5,  10,
     3,  13, 4,  7,  15, 2,  8,  14, 12, 0, 1,  10, 6,  9, 11, 5,
     0,  14, 7,  11, 10, 4,  13, 1,  5,  8, 12, 6,  9,  3, 2,  15,
     13, 8,  10, 1,  3,  15, 4,  2,  11, 6, 7,  12, 0,  5, 14, 9},
    {10, 0,  9,  14, 6, 3,  15, 5,  1,  13, 12, 7,  11, 4,  2,  8,
     13, 7,  0,  9,  3, 4,  6,  10, 2,  8,  5,  14, 12, 11, 15, 1,
     13, 6,  4,  9,  8, 15, 3,  0,  11, 1,  2,  12, 5,  10, 14, 7,
     1,  10, 13, 0,  6, 9,  8,  7,  4,  15, 14, 3,  11, 5,  2,  12},
    {7,  13, 14, 3, 0,  6,  9,  10, 1,  2, 8, 5,  11, 12, 4,  15,
     13, 8,  11, 5, 6,  15, 0,  3,  4,  7, 2, 12, 1,  10, 14, 9,
     10, 6,  9,  0, 12, 11, 7,  13, 15, 1, 3, 14, 5,  2,  8,  4,
     3,  15, 0,  6, 10, 1,  13, 8,  9,  4, 5, 11, 12, 7,  2,  14},
    {2,  12, 4,  1,  7,  10, 11, 6,  8,  5,  3,  15, 13, 0, 14, 9,
     14, 11, 2,  12, 4,  7,  13, 1,  5,  0,  15, 10, 3,  9, 8,  6,
     4,  2,  1,  11, 10, 13, 7,  8,  15, 9,  12, 5,  6,  3, 0,  14,
     11, 8,  12, 7,  1,  14, 2,  13, 6,  15, 0,  9,  10, 4, 5,  3},
    {12, 1,  10, 15, 9, 2,  6,  8,  0,  13, 3,  4,  14, 7,  5,  11,
     10, 15, 4,  2,  7, 12, 9,  5,  6,  1,  13, 14, 0,  11, 3,  8,
     9,  14, 15, 5,  2, 8,  12, 3,  7,  0,  4,  10, 1,  13, 11, 6,
     4,  3,  2,  12, 9, 5,  15, 10, 11, 14, 1,  7,  6,  0,  8,  13},
    {4,  11, 2,  14, 15, 0, 8,  13, 3,  12, 9, 7,  5,  10, 6, 1,
     13, 0,  11, 7,  4,  9, 1,  10, 14, 3,  5, 12, 2,  15, 8, 6,
     1,  4,  11, 13, 12, 3, 7,  14, 10, 15, 6, 8,  0,  5,  9, 2,
     6,  11, 13, 8,  1,  4, 10, 7,  9,  5,  0, 15, 14, 2,  3, 12},
    {13, 2,  8,  4, 6,  15, 11, 1,  10, 9,  3,  14, 5,  0,  12, 7,
     1,  15, 13, 8, 10, 3,  7,  4,  12, 5,  6,  11, 0,  14, 9,  2,
     7,  11, 4,  1, 9,  12, 14, 2,  0,  6,  10, 13, 15, 3,  5,  8,
     2,  1,  14, 7, 4,  10, 8,  13, 15, 12, 9,  0,  3,  5,  6,  11}};

// Generic permutation: output bit i (MSB first) takes input bit table[i].
template <std::size_t N>
std::uint64_t permute(std::uint64_t in, const std::uint8_t (&table)[N], unsigned in_width) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < N; ++i) {
        out = out << 1 | ((in >> (in_width - table[i])) & 1);
    }
    return out;
}

// sp[i][v]: S-box i applied to the 6-bit input v, placed in its nibble slot
// and pushed through P.
using SpTable = std::array<std::array<std::uint32_t, 64>, 8>;

SpTable build_sp() {
    SpTable sp{};
    for (int box = 0; box < 8; ++box) {
        for (unsigned v = 0; v < 64; ++v) {
            unsigned row = (v >> 4 & 2) | (v & 1);
            unsigned col = v >> 1 & 0xF;
            std::uint64_t nibble = kSbox[box][16 * row + col];
            std::uint64_t placed = nibble << (28 - 4 * box);
            sp[box][v] = static_cast<std::uint32_t>(permute(placed, kP, 32));
        }
    }
    return sp;
}

const SpTable& sp_table() {
    static const SpTable sp = build_sp();
    return sp;
}

std::uint64_t load_be64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | p[i];
    return v;
}

void store_be64(std::uint64_t v, std::uint8_t* p) {
    for (int i = 7; i >= 0; --i) {
        p[i] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
}

void require_length(ByteView v, std::size_t n, const char* what) {
    if (v.size() != n) {
        throw Error(ErrorCode::invalid_argument,
                    std::string(what) + " must be " + std::to_string(n) + " octets, got " + std::to_string(v.size()));
    }
}

} // namespace

Des::Des(ByteView key) {
    require_length(key, 8, "DES key");
    const std::uint64_t cd = permute(load_be64(key.data()), kPc1, 64);
    auto c = static_cast<std::uint32_t>(cd >> 28);
    auto d = static_cast<std::uint32_t>(cd & 0x0FFFFFFF);
    auto rot28 = [](std::uint32_t x, unsigned n) { return ((x << n) | (x >> (28 - n))) & 0x0FFFFFFF; };
    for (int round = 0; round < 16; ++round) {
        c = rot28(c, kShifts[round]);
        d = rot28(d, kShifts[round]);
        std::uint64_t k = permute(std::uint64_t{c} << 28 | d, kPc2, 56);
        for (int g = 0; g < 8; ++g) subkeys_[round][g] = static_cast<std::uint8_t>(k >> (42 - 6 * g) & 0x3F);
    }
}

std::uint64_t Des::crypt(std::uint64_t block, bool decrypt) const {
    const SpTable& sp = sp_table();
    const std::uint64_t ip = permute(block, kIp, 64);
    auto l = static_cast<std::uint32_t>(ip >> 32);
    auto r = static_cast<std::uint32_t>(ip);
    for (int round = 0; round < 16; ++round) {
        const auto& k = subkeys_[decrypt ? 15 - round : round];
        std::uint32_t f = 0;
        // Expansion group g covers bits 4g .. 4g+5 of R (1-based, wrapping).
        for (int g = 0; g < 8; ++g) {
            std::uint32_t e = std::rotl(r, (4 * g + 31) % 32) >> 26 & 0x3F;
            f ^= sp[g][e ^ k[g]];
        }
        std::uint32_t next = l ^ f;
        l = r;
        r = next;
    }
    return permute(std::uint64_t{r} << 32 | l, kFp, 64);
}

void Des::encrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
    store_be64(crypt(load_be64(in), false), out);
}

void Des::decrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
    store_be64(crypt(load_be64(in), true), out);
}

DesBlock des_encrypt_block(ByteView key, ByteView block) {
    require_length(block, 8, "DES block");
    DesBlock out;
    Des(key).encrypt_block(block.data(), out.data());
    return out;
}

DesBlock des_decrypt_block(ByteView key, ByteView block) {
    require_length(block, 8, "DES block");
    DesBlock out;
    Des(key).decrypt_block(block.data(), out.data());
    return out;
}

} // namespace ncsh::primitives
