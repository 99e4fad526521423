#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ncsh/bytes.hpp"

namespace ncsh::netio {

enum class MsgType : std::uint8_t {
    KEY_REQUEST = 0x01,
    KEY_RESPONSE = 0x02,
    DATA = 0x03,
    ACK = 0x04,
    ERROR = 0x05,
    TIME_REPORT = 0x06,
};

inline constexpr std::array<MsgType, 6> kAllMsgTypes = {MsgType::KEY_REQUEST, MsgType::KEY_RESPONSE, MsgType::DATA,
                                                        MsgType::ACK,         MsgType::ERROR,        MsgType::TIME_REPORT};

std::string_view to_string(MsgType type) noexcept;
bool is_known_msg_type(std::uint8_t value) noexcept;

inline constexpr std::array<std::uint8_t, 4> kFrameMagic = {'N', 'C', 'S', 'H'};
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kFrameHeaderOctets = 22;
inline constexpr std::size_t kFrameCheckOctets = 4;
inline constexpr std::size_t kFrameOverhead = kFrameHeaderOctets + kFrameCheckOctets;
inline constexpr std::size_t kMaxFramePayload = 60000;

// Wire layout, all integers big-endian:
//   magic(4) version(1) msg_type(1) session_id(8) frag_index(2) frag_count(2)
//   payload_len(4) payload check(4)
// where check is the first four octets of SHA-1 over everything before it.
struct Frame {
    MsgType msg_type = MsgType::KEY_REQUEST;
    std::uint64_t session_id = 0;
    std::uint16_t frag_index = 0;
    std::uint16_t frag_count = 1;
    Bytes payload;

    friend bool operator==(const Frame&, const Frame&) = default;
};

// Throws invalid-argument for frames that break the layout invariants, so an
// oversized payload can never reach the wire.
Bytes encode_frame(const Frame& frame);

// Rejects with bad-magic, bad-version, truncated, bad-length, bad-checksum,
// unknown-msg-type or bad-fragment.
Frame decode_frame(ByteView datagram);

} // namespace ncsh::netio
