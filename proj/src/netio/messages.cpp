#include "ncsh/netio/messages.hpp"

namespace ncsh::netio {

namespace {

void put_integer(Bytes& out, const BigUint& v) {
    const Bytes mag = v.to_bytes_be();
    put_u32_be(out, static_cast<std::uint32_t>(mag.size()));
    put_bytes(out, mag);
}

BigUint read_integer(ByteReader& in) { return BigUint::from_bytes_be(in.take(in.u32_be())); }

void expect_end(const ByteReader& in) {
    if (!in.empty()) throw Error(ErrorCode::bad_length, "trailing octets in message payload");
}

} // namespace

std::vector<Bytes> encode_message(const Message& msg, std::size_t max_fragment) {
    std::vector<Bytes> out;
    for (auto& f : fragment(msg.payload, std::min(max_fragment, kMaxFramePayload))) {
        out.push_back(encode_frame({msg.type, msg.session_id, f.index, f.count, std::move(f.chunk)}));
    }
    return out;
}

std::optional<Message> MessageReceiver::accept(ByteView datagram) {
    Frame f;
    try {
        f = decode_frame(datagram);
    } catch (const Error&) {
        ++rejected_;
        return std::nullopt;
    }
    const auto key = std::pair{f.session_id, f.msg_type};
    auto& r = partial_[key];
    std::optional<Bytes> payload;
    try {
        payload = r.add({f.frag_index, f.frag_count, std::move(f.payload)});
    } catch (const Error&) {
        // A different message reusing the slot: start over from this fragment.
        ++rejected_;
        partial_.erase(key);
        return std::nullopt;
    }
    if (!payload) return std::nullopt;
    partial_.erase(key);
    return Message{f.msg_type, f.session_id, std::move(*payload)};
}

Bytes encode_public_key(const RsaPublicKey& key) {
    Bytes out;
    put_integer(out, key.e);
    put_integer(out, key.n);
    return out;
}

RsaPublicKey decode_public_key(ByteView payload) {
    ByteReader in(payload);
    RsaPublicKey key;
    key.e = read_integer(in);
    key.n = read_integer(in);
    expect_end(in);
    return key;
}

Bytes encode_envelope(const Envelope& env) {
    Bytes out;
    put_u8(out, static_cast<std::uint8_t>(env.suite));
    put_u8(out, static_cast<std::uint8_t>(env.sig_mode));
    put_integer(out, env.sender_public.e);
    put_integer(out, env.sender_public.n);
    handshake::put_block_list(out, env.wrapped_key);
    if (env.iv.size() > 0xFF) throw Error(ErrorCode::invalid_argument, "IV longer than 255 octets");
    put_u8(out, static_cast<std::uint8_t>(env.iv.size()));
    put_bytes(out, env.iv);
    put_u32_be(out, static_cast<std::uint32_t>(env.ciphertext.size()));
    put_bytes(out, env.ciphertext);
    handshake::put_block_list(out, env.signature);
    return out;
}

Envelope decode_envelope(ByteView payload) {
    ByteReader in(payload);
    Envelope env;
    const std::uint8_t suite = in.u8();
    const std::uint8_t mode = in.u8();
    if (suite < 1 || suite > 3 || mode < 1 || mode > 2) {
        throw Error(ErrorCode::invalid_argument, "unknown suite or signature mode");
    }
    env.suite = static_cast<CipherSuite>(suite);
    env.sig_mode = static_cast<SigMode>(mode);
    env.sender_public.e = read_integer(in);
    env.sender_public.n = read_integer(in);
    env.wrapped_key = handshake::read_block_list(in);
    const ByteView iv = in.take(in.u8());
    env.iv.assign(iv.begin(), iv.end());
    const ByteView ct = in.take(in.u32_be());
    env.ciphertext.assign(ct.begin(), ct.end());
    env.signature = handshake::read_block_list(in);
    expect_end(in);
    return env;
}

Bytes encode_time_report(const TimeReport& report) {
    Bytes out;
    put_u64_be(out, report.verify_us);
    put_u64_be(out, report.decrypt_us);
    put_u64_be(out, report.total_us);
    return out;
}

TimeReport decode_time_report(ByteView payload) {
    ByteReader in(payload);
    TimeReport r;
    r.verify_us = in.u64_be();
    r.decrypt_us = in.u64_be();
    r.total_us = in.u64_be();
    expect_end(in);
    return r;
}

Bytes encode_error(ErrorCode code) {
    Bytes out;
    put_u16_be(out, static_cast<std::uint16_t>(code));
    return out;
}

ErrorCode decode_error(ByteView payload) {
    ByteReader in(payload);
    const std::uint16_t v = in.u16_be();
    expect_end(in);
    if (v > static_cast<std::uint16_t>(ErrorCode::io_error)) return ErrorCode::protocol_violation;
    return static_cast<ErrorCode>(v);
}

} // namespace ncsh::netio
