#include "ncsh/handshake/envelope.hpp"

#include "ncsh/error.hpp"

namespace ncsh::handshake {

void put_block_list(Bytes& out, const std::vector<BigUint>& blocks) {
    if (blocks.size() > 0xFFFF) {
        throw Error(ErrorCode::invalid_argument, "too many RSA blocks for one list");
    }
    put_u16_be(out, static_cast<std::uint16_t>(blocks.size()));
    for (const BigUint& b : blocks) {
        Bytes mag = b.to_bytes_be();
        put_u32_be(out, static_cast<std::uint32_t>(mag.size()));
        put_bytes(out, mag);
    }
}

std::vector<BigUint> read_block_list(ByteReader& in) {
    const std::uint16_t count = in.u16_be();
    std::vector<BigUint> blocks;
    blocks.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        const std::uint32_t len = in.u32_be();
        blocks.push_back(BigUint::from_bytes_be(in.take(len)));
    }
    return blocks;
}

Bytes signed_material(const Envelope& env) {
    Bytes out;
    put_u8(out, static_cast<std::uint8_t>(env.suite));
    put_u8(out, static_cast<std::uint8_t>(env.sig_mode));
    put_block_list(out, env.wrapped_key);
    put_u8(out, static_cast<std::uint8_t>(env.iv.size()));
    put_bytes(out, env.iv);
    put_u32_be(out, static_cast<std::uint32_t>(env.ciphertext.size()));
    put_bytes(out, env.ciphertext);
    return out;
}

} // namespace ncsh::handshake
