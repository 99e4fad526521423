#include "ncsh/primitives/sha1.hpp"

#include <bit>
#include <cstring>

namespace ncsh::primitives {

Sha1::Sha1() : state_{0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0} {}

void Sha1::compress(const std::uint8_t* block) {
    std::uint32_t w[80];
    for (int j = 0; j < 16; ++j) {
        w[j] = std::uint32_t{block[4 * j]} << 24 | std::uint32_t{block[4 * j + 1]} << 16 |
               std::uint32_t{block[4 * j + 2]} << 8 | block[4 * j + 3];
    }
    for (int j = 16; j < 80; ++j) {
        w[j] = std::rotl(w[j - 3] ^ w[j - 8] ^ w[j - 14] ^ w[j - 16], 1);
    }

    auto [a, b, c, d, e] = state_;
    for (int j = 0; j < 80; ++j) {
        std::uint32_t f;
        std::uint32_t k;
        if (j < 20) {
            f = (b & c) | (~b & d);
            k = 0x5A827999;
        } else if (j < 40) {
            f = b ^ c ^ d;
            k = 0x6ED9EBA1;
        } else if (j < 60) {
            f = (b & c) | (b & d) | (c & d);
            k = 0x8F1BBCDC;
        } else {
            f = b ^ c ^ d;
            k = 0xCA62C1D6;
        }
        std::uint32_t tmp = std::rotl(a, 5) + f + e + k + w[j];
        e = d;
        d = c;
        c = std::rotl(b, 30);
        b = a;
        a = tmp;
    }
    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
}

void Sha1::update(ByteView data) {
    total_bits_ += static_cast<std::uint64_t>(data.size()) * 8;
    std::size_t pos = 0;
    if (buffered_ > 0) {
        std::size_t take = std::min(data.size(), buffer_.size() - buffered_);
        std::memcpy(buffer_.data() + buffered_, data.data(), take);
        buffered_ += take;
        pos = take;
        if (buffered_ < buffer_.size()) return;
        compress(buffer_.data());
        buffered_ = 0;
    }
    for (; pos + 64 <= data.size(); pos += 64) compress(data.data() + pos);
    if (pos < data.size()) {
        std::memcpy(buffer_.data(), data.data() + pos, data.size() - pos);
        buffered_ = data.size() - pos;
    }
}

Digest Sha1::finish() {
    const std::uint64_t bits = total_bits_;
    buffer_[buffered_++] = 0x80;
    if (buffered_ > 56) {
        std::memset(buffer_.data() + buffered_, 0, 64 - buffered_);
        compress(buffer_.data());
        buffered_ = 0;
    }
    std::memset(buffer_.data() + buffered_, 0, 56 - buffered_);
    for (int i = 0; i < 8; ++i) buffer_[56 + i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
    compress(buffer_.data());

    Digest out;
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 4; ++k) out[4 * i + k] = static_cast<std::uint8_t>(state_[i] >> (24 - 8 * k));
    }
    return out;
}

Digest sha1(ByteView data) {
    Sha1 h;
    h.update(data);
    return h.finish();
}

} // namespace ncsh::primitives
