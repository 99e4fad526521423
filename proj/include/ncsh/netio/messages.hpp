#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncsh/error.hpp"
#include "ncsh/handshake/envelope.hpp"
#include "ncsh/handshake/session.hpp"
#include "ncsh/netio/fragment.hpp"
#include "ncsh/netio/frame.hpp"

namespace ncsh::netio {

using handshake::Envelope;
using handshake::TimeReport;
using ffmath::BigUint;
using primitives::RsaPublicKey;

// A protocol message before fragmentation.
struct Message {
    MsgType type = MsgType::KEY_REQUEST;
    std::uint64_t session_id = 0;
    Bytes payload;

    friend bool operator==(const Message&, const Message&) = default;
};

// Fragments and frames a message into datagrams.
std::vector<Bytes> encode_message(const Message& msg, std::size_t max_fragment = kDefaultMaxFragment);

// Decodes datagrams and reassembles them per (session, type). Undecodable
// datagrams are counted and dropped.
class MessageReceiver {
public:
    std::optional<Message> accept(ByteView datagram);
    std::size_t rejected() const noexcept { return rejected_; }

private:
    std::map<std::pair<std::uint64_t, MsgType>, Reassembler> partial_;
    std::size_t rejected_ = 0;
};

// e_len(4)+e | n_len(4)+n, minimal big-endian magnitudes.
Bytes encode_public_key(const RsaPublicKey& key);
RsaPublicKey decode_public_key(ByteView payload);

// suite(1) | sig_mode(1) | e_len(4)+e | n_len(4)+n | wrapped blocks |
// iv_len(1)+iv | ct_len(4)+ct | signature blocks
Bytes encode_envelope(const Envelope& env);
Envelope decode_envelope(ByteView payload);

// verify_us | decrypt_us | total_us, each 8 octets.
Bytes encode_time_report(const TimeReport& report);
TimeReport decode_time_report(ByteView payload);

Bytes encode_error(ErrorCode code);
ErrorCode decode_error(ByteView payload);

} // namespace ncsh::netio
