#include "ncsh/netio/peers.hpp"

#include "ncsh/netio/reliable.hpp"

namespace ncsh::netio {

using handshake::Phase;
using handshake::Role;
using handshake::step;
namespace event = handshake::event;
namespace action = handshake::action;

ShooterTargetServer::ShooterTargetServer(RsaKeyPair keys, std::size_t max_fragment)
    : keys_(std::move(keys)), max_fragment_(max_fragment) {}

void ShooterTargetServer::reply_with(DatagramEndpoint& reply, MsgType type, Bytes payload, bool cache) {
    const std::uint64_t id = session_ ? session_->session_id : 0;
    auto datagrams = encode_message({type, id, std::move(payload)}, max_fragment_);
    for (const auto& d : datagrams) reply.send(d);
    if (cache) last_reply_ = std::move(datagrams);
}

void ShooterTargetServer::finish(SessionOutcome outcome) {
    finished_ = true;
    outcomes_.push_back(std::move(outcome));
}

void ShooterTargetServer::handle_datagram(ByteView datagram, DatagramEndpoint& reply) {
    auto msg = receiver_.accept(datagram);
    if (!msg) return;
    switch (msg->type) {
    case MsgType::KEY_REQUEST: handle_key_request(*msg, reply); break;
    case MsgType::DATA: handle_data(*msg, reply); break;
    default: break;  // not addressed to this role
    }
}

void ShooterTargetServer::handle_key_request(const Message& msg, DatagramEndpoint& reply) {
    RsaPublicKey sender;
    try {
        sender = decode_public_key(msg.payload);
    } catch (const Error&) {
        return;
    }
    if (!session_ || session_->session_id != msg.session_id) {
        if (session_pending()) {
            finish({session_->session_id, false, ErrorCode::delivery_failed, {}, {}});
        }
        session_ = handshake::make_session(Role::SHOOTER_TARGET, msg.session_id, keys_,
                                           handshake::calibrate(keys_.level, CipherSuite::AES));
        finished_ = false;
        last_data_.reset();
        last_reply_.clear();
    }
    try {
        auto r = step(*session_, event::KeyRequestReceived{sender});
        session_ = std::move(r.state);
        for (const auto& a : r.actions) {
            if (const auto* resp = std::get_if<action::SendKeyResponse>(&a)) {
                reply_with(reply, MsgType::KEY_RESPONSE, encode_public_key(resp->own), false);
            }
        }
    } catch (const Error& e) {
        reply_with(reply, MsgType::ERROR, encode_error(e.code()), false);
    }
}

void ShooterTargetServer::handle_data(const Message& msg, DatagramEndpoint& reply) {
    if (!session_ || session_->session_id != msg.session_id || session_->phase != Phase::READY) {
        const auto datagrams = encode_message({MsgType::ERROR, msg.session_id, encode_error(ErrorCode::protocol_violation)},
                                              max_fragment_);
        for (const auto& d : datagrams) reply.send(d);
        return;
    }
    if (last_data_ && *last_data_ == msg.payload) {
        for (const auto& d : last_reply_) reply.send(d);
        return;
    }
    last_data_ = msg.payload;

    Envelope env;
    try {
        env = decode_envelope(msg.payload);
    } catch (const Error&) {
        // Nothing verifiable arrived.
        reply_with(reply, MsgType::ERROR, encode_error(ErrorCode::signature_invalid), true);
        finish({msg.session_id, false, ErrorCode::signature_invalid, {}, {}});
        return;
    }

    auto r = step(*session_, event::DataReceived{std::move(env)});
    session_ = std::move(r.state);
    SessionOutcome outcome{msg.session_id, false, ErrorCode::protocol_violation, {}, {}};
    for (auto& a : r.actions) {
        if (auto* d = std::get_if<action::DeliverPlaintext>(&a)) {
            outcome.ok = true;
            outcome.plaintext = std::move(d->plaintext);
        } else if (const auto* ack = std::get_if<action::SendAck>(&a)) {
            outcome.report = ack->report;
            reply_with(reply, MsgType::ACK, encode_time_report(ack->report), true);
        } else if (const auto* err = std::get_if<action::SendError>(&a)) {
            outcome.error = err->code;
            reply_with(reply, MsgType::ERROR, encode_error(err->code), true);
        }
    }
    finish(std::move(outcome));
}

void ShooterTargetServer::on_idle() {
    if (!session_pending()) return;
    auto r = step(*session_, event::Timeout{});
    session_ = std::move(r.state);
    if (session_->phase == Phase::CLOSED) {
        finish({session_->session_id, false, ErrorCode::delivery_failed, {}, {}});
    }
}

namespace {

struct ClientRun {
    DatagramEndpoint& endpoint;
    SessionState state;
    const ClientOptions& options;
    ClientOutcome out;

    void apply(const handshake::ProtocolEvent& ev) {
        auto r = step(state, ev);
        state = std::move(r.state);
        for (const auto& a : r.actions) {
            if (const auto* f = std::get_if<action::ReportFailure>(&a)) out.error = f->code;
            if (const auto* rec = std::get_if<action::RecordTimeReport>(&a)) out.peer_report = rec->report;
        }
    }

    // Sends one protocol message reliably; the state machine decides whether
    // each timeout earns a retransmission.
    std::optional<Message> exchange(MsgType type, Bytes payload, std::initializer_list<MsgType> expected, int& count) {
        const auto datagrams = encode_message({type, state.session_id, std::move(payload)}, options.max_fragment);
        out.wire.push_back({true, type});
        auto accept = [&](const Message& m) {
            if (m.session_id != state.session_id) return false;
            for (MsgType t : expected) {
                if (m.type == t) return true;
            }
            return false;
        };
        auto retry = [&] {
            apply(event::Timeout{});
            return state.phase != Phase::CLOSED;
        };
        const auto report = send_reliable(endpoint, datagrams, options.timeout, options.max_retries, accept, retry);
        count = report.transmissions;
        if (!report.delivered) {
            if (state.phase != Phase::CLOSED) {
                state.phase = Phase::CLOSED;
                out.error = ErrorCode::delivery_failed;
            }
            return std::nullopt;
        }
        out.wire.push_back({false, report.response->type});
        return report.response;
    }

    bool fail_on_error(const Message& m) {
        if (m.type != MsgType::ERROR) return false;
        ErrorCode code = ErrorCode::protocol_violation;
        try {
            code = decode_error(m.payload);
        } catch (const Error&) {
        }
        apply(event::ErrorReceived{code});
        out.error = code;
        return true;
    }
};

} // namespace

ClientOutcome run_command_centre(DatagramEndpoint& endpoint, const RsaKeyPair& own, const SuiteParams& params,
                                 ByteView plaintext, RandomSource& rng, std::uint64_t session_id,
                                 const ClientOptions& options) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    ClientRun run{endpoint, handshake::make_session(Role::COMMAND_CENTRE, session_id, own, params), options, {}};
    run.state.max_retries = options.max_retries;

    run.apply(event::Start{});
    auto key_msg = run.exchange(MsgType::KEY_REQUEST, encode_public_key(own.public_key()),
                                {MsgType::KEY_RESPONSE, MsgType::ERROR}, run.out.key_transmissions);
    if (!key_msg || run.fail_on_error(*key_msg)) return run.out;

    RsaPublicKey peer;
    try {
        peer = decode_public_key(key_msg->payload);
    } catch (const Error&) {
        run.out.error = ErrorCode::protocol_violation;
        return run.out;
    }
    run.out.peer = peer;
    if (options.expected_peer && *options.expected_peer != peer) {
        run.out.error = ErrorCode::signature_invalid;
        return run.out;
    }
    run.apply(event::KeyResponseReceived{peer});

    const Envelope env = handshake::seal(run.state, plaintext, rng);
    run.apply(event::SendRequested{env});
    auto reply = run.exchange(MsgType::DATA, encode_envelope(env), {MsgType::ACK, MsgType::ERROR},
                              run.out.data_transmissions);
    if (!reply || run.fail_on_error(*reply)) return run.out;

    TimeReport report;
    try {
        report = decode_time_report(reply->payload);
    } catch (const Error&) {
        run.out.error = ErrorCode::protocol_violation;
        return run.out;
    }
    run.apply(event::AckReceived{report});
    run.out.ok = run.state.phase == Phase::READY;
    run.out.round_trip = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
    return run.out;
}

} // namespace ncsh::netio
