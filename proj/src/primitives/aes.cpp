#include "ncsh/primitives/aes.hpp"

#include <bit>
#include <cstring>

#include "ncsh/error.hpp"
#include "ncsh/ffmath/gf256.hpp"

namespace ncsh::primitives {

namespace {

using ffmath::Gf256;

struct Tables {
    std::array<std::uint8_t, 256> sbox{};
    std::array<std::uint8_t, 256> inv_sbox{};
    // Products by the MixColumns / InvMixColumns coefficients.
    std::array<std::uint8_t, 256> mul2{}, mul3{}, mul9{}, mul11{}, mul13{}, mul14{};
};

std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return ffmath::gf256_mul(Gf256{a}, Gf256{b}).value; }

Tables build_tables() {
    Tables t;
    for (unsigned i = 0; i < 256; ++i) {
        auto b = static_cast<std::uint8_t>(i);
        std::uint8_t inv = b == 0 ? 0 : ffmath::gf256_inv(Gf256{b}).value;
        std::uint8_t s = inv ^ std::rotl(inv, 1) ^ std::rotl(inv, 2) ^ std::rotl(inv, 3) ^ std::rotl(inv, 4) ^ 0x63;
        t.sbox[i] = s;
        t.inv_sbox[s] = b;
        t.mul2[i] = mul(b, 2);
        t.mul3[i] = mul(b, 3);
        t.mul9[i] = mul(b, 9);
        t.mul11[i] = mul(b, 11);
        t.mul13[i] = mul(b, 13);
        t.mul14[i] = mul(b, 14);
    }
    return t;
}

const Tables& tables() {
    static const Tables t = build_tables();
    return t;
}

void add_round_key(std::uint8_t* s, const std::uint8_t* rk) {
    for (int i = 0; i < 16; ++i) s[i] ^= rk[i];
}

// State is column-major: s[4*c + r].
void sub_shift(std::uint8_t* s, const std::array<std::uint8_t, 256>& box) {
    std::uint8_t t[16];
    for (int c = 0; c < 4; ++c) {
        for (int r = 0; r < 4; ++r) t[4 * c + r] = box[s[4 * ((c + r) % 4) + r]];
    }
    std::memcpy(s, t, 16);
}

void inv_sub_shift(std::uint8_t* s, const std::array<std::uint8_t, 256>& box) {
    std::uint8_t t[16];
    for (int c = 0; c < 4; ++c) {
        for (int r = 0; r < 4; ++r) t[4 * ((c + r) % 4) + r] = box[s[4 * c + r]];
    }
    std::memcpy(s, t, 16);
}

void mix_columns(std::uint8_t* s, const Tables& t) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = s + 4 * c;
        std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = t.mul2[a0] ^ t.mul3[a1] ^ a2 ^ a3;
        col[1] = a0 ^ t.mul2[a1] ^ t.mul3[a2] ^ a3;
        col[2] = a0 ^ a1 ^ t.mul2[a2] ^ t.mul3[a3];
        col[3] = t.mul3[a0] ^ a1 ^ a2 ^ t.mul2[a3];
    }
}

void inv_mix_columns(std::uint8_t* s, const Tables& t) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = s + 4 * c;
        std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = t.mul14[a0] ^ t.mul11[a1] ^ t.mul13[a2] ^ t.mul9[a3];
        col[1] = t.mul9[a0] ^ t.mul14[a1] ^ t.mul11[a2] ^ t.mul13[a3];
        col[2] = t.mul13[a0] ^ t.mul9[a1] ^ t.mul14[a2] ^ t.mul11[a3];
        col[3] = t.mul11[a0] ^ t.mul13[a1] ^ t.mul9[a2] ^ t.mul14[a3];
    }
}

void require_length(ByteView v, std::size_t n, const char* what) {
    if (v.size() != n) {
        throw Error(ErrorCode::invalid_argument,
                    std::string(what) + " must be " + std::to_string(n) + " octets, got " + std::to_string(v.size()));
    }
}

} // namespace

const std::array<std::uint8_t, 256>& aes_sbox() { return tables().sbox; }
const std::array<std::uint8_t, 256>& aes_inv_sbox() { return tables().inv_sbox; }

Aes128::Aes128(ByteView key) {
    require_length(key, 16, "AES-128 key");
    const auto& sbox = tables().sbox;
    std::memcpy(round_keys_.data(), key.data(), 16);
    std::uint8_t rcon = 1;
    for (std::size_t i = 16; i < round_keys_.size(); i += 4) {
        std::uint8_t w[4] = {round_keys_[i - 4], round_keys_[i - 3], round_keys_[i - 2], round_keys_[i - 1]};
        if (i % 16 == 0) {
            std::uint8_t first = w[0];
            w[0] = sbox[w[1]] ^ rcon;
            w[1] = sbox[w[2]];
            w[2] = sbox[w[3]];
            w[3] = sbox[first];
            rcon = mul(rcon, 2);
        }
        for (int k = 0; k < 4; ++k) round_keys_[i + k] = round_keys_[i - 16 + k] ^ w[k];
    }
}

void Aes128::encrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
    const Tables& t = tables();
    std::uint8_t s[16];
    std::memcpy(s, in, 16);
    add_round_key(s, round_keys_.data());
    for (int round = 1; round < 10; ++round) {
        sub_shift(s, t.sbox);
        mix_columns(s, t);
        add_round_key(s, round_keys_.data() + 16 * round);
    }
    sub_shift(s, t.sbox);
    add_round_key(s, round_keys_.data() + 160);
    std::memcpy(out, s, 16);
}

void Aes128::decrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
    const Tables& t = tables();
    std::uint8_t s[16];
    std::memcpy(s, in, 16);
    add_round_key(s, round_keys_.data() + 160);
    for (int round = 9; round > 0; --round) {
        inv_sub_shift(s, t.inv_sbox);
        add_round_key(s, round_keys_.data() + 16 * round);
        inv_mix_columns(s, t);
    }
    inv_sub_shift(s, t.inv_sbox);
    add_round_key(s, round_keys_.data());
    std::memcpy(out, s, 16);
}

AesBlock aes128_encrypt_block(ByteView key, ByteView block) {
    require_length(block, 16, "AES block");
    AesBlock out;
    Aes128(key).encrypt_block(block.data(), out.data());
    return out;
}

AesBlock aes128_decrypt_block(ByteView key, ByteView block) {
    require_length(block, 16, "AES block");
    AesBlock out;
    Aes128(key).decrypt_block(block.data(), out.data());
    return out;
}

} // namespace ncsh::primitives
