#include "ncsh/netio/frame.hpp"

#include <algorithm>

#include "ncsh/error.hpp"
#include "ncsh/primitives/sha1.hpp"

namespace ncsh::netio {

std::string_view to_string(MsgType type) noexcept {
    switch (type) {
    case MsgType::KEY_REQUEST: return "KEY_REQUEST";
    case MsgType::KEY_RESPONSE: return "KEY_RESPONSE";
    case MsgType::DATA: return "DATA";
    case MsgType::ACK: return "ACK";
    case MsgType::ERROR: return "ERROR";
    case MsgType::TIME_REPORT: return "TIME_REPORT";
    }
    return "UNKNOWN";
}

bool is_known_msg_type(std::uint8_t value) noexcept { return value >= 0x01 && value <= 0x06; }

namespace {

std::array<std::uint8_t, kFrameCheckOctets> check_of(ByteView covered) {
    const auto digest = primitives::sha1(covered);
    std::array<std::uint8_t, kFrameCheckOctets> out{};
    std::copy_n(digest.begin(), out.size(), out.begin());
    return out;
}

} // namespace

Bytes encode_frame(const Frame& frame) {
    if (frame.payload.size() > kMaxFramePayload) {
        throw Error(ErrorCode::invalid_argument, "frame payload exceeds 60000 octets");
    }
    if (frame.frag_count == 0 || frame.frag_index >= frame.frag_count) {
        throw Error(ErrorCode::invalid_argument, "fragment index out of range");
    }
    Bytes out;
    out.reserve(kFrameOverhead + frame.payload.size());
    put_bytes(out, kFrameMagic);
    put_u8(out, kFrameVersion);
    put_u8(out, static_cast<std::uint8_t>(frame.msg_type));
    put_u64_be(out, frame.session_id);
    put_u16_be(out, frame.frag_index);
    put_u16_be(out, frame.frag_count);
    put_u32_be(out, static_cast<std::uint32_t>(frame.payload.size()));
    put_bytes(out, frame.payload);
    put_bytes(out, check_of(out));
    return out;
}

Frame decode_frame(ByteView datagram) {
    if (datagram.size() < kFrameOverhead) {
        throw Error(ErrorCode::truncated, "datagram shorter than the frame overhead");
    }
    ByteReader in(datagram);
    const ByteView magic = in.take(kFrameMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kFrameMagic.begin())) {
        throw Error(ErrorCode::bad_magic, "frame magic mismatch");
    }
    if (in.u8() != kFrameVersion) {
        throw Error(ErrorCode::bad_version, "unsupported frame version");
    }
    const std::uint8_t type = in.u8();
    Frame f;
    f.session_id = in.u64_be();
    f.frag_index = in.u16_be();
    f.frag_count = in.u16_be();
    const std::uint32_t len = in.u32_be();
    if (len > kMaxFramePayload) {
        throw Error(ErrorCode::bad_length, "payload length field exceeds the maximum");
    }
    if (in.remaining() < len + kFrameCheckOctets) {
        throw Error(ErrorCode::truncated, "payload shorter than its length field");
    }
    if (in.remaining() > len + kFrameCheckOctets) {
        throw Error(ErrorCode::bad_length, "trailing octets after the frame");
    }
    const ByteView payload = in.take(len);
    const ByteView check = in.take(kFrameCheckOctets);
    const auto expected = check_of(datagram.first(kFrameHeaderOctets + len));
    if (!std::equal(check.begin(), check.end(), expected.begin())) {
        throw Error(ErrorCode::bad_checksum, "frame check mismatch");
    }
    if (!is_known_msg_type(type)) {
        throw Error(ErrorCode::unknown_msg_type, "unknown message type " + std::to_string(type));
    }
    if (f.frag_count == 0 || f.frag_index >= f.frag_count) {
        throw Error(ErrorCode::bad_fragment, "fragment index out of range");
    }
    f.msg_type = static_cast<MsgType>(type);
    f.payload.assign(payload.begin(), payload.end());
    return f;
}

} // namespace ncsh::netio
