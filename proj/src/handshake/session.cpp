#include "ncsh/handshake/session.hpp"

#include "ncsh/handshake/signature.hpp"
#include "ncsh/primitives/cbc.hpp"

namespace ncsh::handshake {

using Clock = std::chrono::steady_clock;
using primitives::rsa_decrypt_blockwise;
using primitives::rsa_encrypt_blockwise;

std::string_view to_string(Role role) noexcept {
    return role == Role::COMMAND_CENTRE ? "command-centre" : "shooter-target";
}

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
    case Phase::IDLE: return "IDLE";
    case Phase::AWAITING_KEY: return "AWAITING_KEY";
    case Phase::READY: return "READY";
    case Phase::AWAITING_ACK: return "AWAITING_ACK";
    case Phase::CLOSED: return "CLOSED";
    }
    return "?";
}

SessionState make_session(Role role, std::uint64_t session_id, RsaKeyPair own_keys, SuiteParams params) {
    SessionState s;
    s.role = role;
    s.session_id = session_id;
    s.own_keys = std::move(own_keys);
    s.params = params;
    return s;
}

namespace {

std::uint64_t micros(std::chrono::nanoseconds d) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(d).count());
}

[[noreturn]] void violation(const SessionState& s, std::string_view what) {
    throw Error(ErrorCode::protocol_violation, std::string(what) + " in " + std::string(to_string(s.role)) + "/" +
                                                   std::string(to_string(s.phase)));
}

bool verify(const SessionState& state, const Envelope& env) {
    if (env.sig_mode == SigMode::DIGEST) {
        return verify_digest(env.sender_public, signed_material(env), env.signature);
    }
    if (env.suite != CipherSuite::RSA || env.signature.empty()) return false;
    try {
        auto recovered = verify_literal(env.sender_public, env.signature);
        return recovered == primitives::parse_blocks(env.ciphertext, state.own_keys.n.byte_length());
    } catch (const Error&) {
        return false;
    }
}

} // namespace

Envelope seal(const SessionState& state, ByteView plaintext, RandomSource& rng, SealTrace* trace) {
    if (state.phase != Phase::READY || !state.peer_public) {
        violation(state, "seal requires an established peer key");
    }
    const RsaPublicKey& peer = *state.peer_public;
    const RsaKeyPair& own = state.own_keys;
    BufferMeter* meter = trace ? &trace->payload_buffers : nullptr;

    Envelope env;
    env.suite = state.params.suite;
    env.sig_mode = state.params.sig_mode;
    env.sender_public = own.public_key();

    std::vector<BigUint> ct_blocks;
    if (env.suite == CipherSuite::RSA) {
        const auto t0 = Clock::now();
        const std::size_t width = peer.n.byte_length();
        ct_blocks = rsa_encrypt_blockwise(peer, plaintext, meter);
        MeterLease blocks_lease(meter, ct_blocks.size() * width);
        MeterLease wire_lease(meter, ct_blocks.size() * width);
        env.ciphertext = primitives::serialize_blocks(ct_blocks, width);
        if (trace) trace->encrypt = Clock::now() - t0;
    } else {
        const auto t0 = Clock::now();
        const std::size_t bs = block_size(env.suite);
        MeterLease key_lease(meter, state.params.sym_key_octets + bs);
        const auto key = primitives::generate_symmetric_key(env.suite, rng);
        env.iv.resize(bs);
        rng.fill(env.iv);
        const auto t1 = Clock::now();
        env.ciphertext = primitives::cbc_seal(env.suite, key, env.iv, plaintext, meter);
        const auto t2 = Clock::now();
        env.wrapped_key = rsa_encrypt_blockwise(peer, key.bytes);
        if (trace) {
            trace->session_key = t1 - t0;
            trace->encrypt = t2 - t1;
            trace->wrap = Clock::now() - t2;
        }
    }

    const auto t_sign = Clock::now();
    if (env.sig_mode == SigMode::LITERAL) {
        // Literal signing only exists for RSA ciphertext blocks, and only when
        // they fit under our modulus; otherwise fall back to a digest.
        env.sig_mode = SigMode::DIGEST;
        if (env.suite == CipherSuite::RSA) {
            try {
                env.signature = sign_literal(own, ct_blocks, peer.n);
                env.sig_mode = SigMode::LITERAL;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::incompatible_moduli) throw;
            }
        }
    }
    if (env.sig_mode == SigMode::DIGEST) {
        env.signature = sign_digest(own, signed_material(env));
    }
    if (trace) trace->sign = Clock::now() - t_sign;
    return env;
}

Bytes open(const SessionState& state, const Envelope& env, OpenTrace* trace) {
    if (state.phase != Phase::READY) {
        violation(state, "open requires an established session");
    }
    const auto t0 = Clock::now();
    if (trace) ++trace->verify_attempts;
    const bool pinned_ok = !state.peer_public || *state.peer_public == env.sender_public;
    const bool ok = pinned_ok && verify(state, env);
    const auto t1 = Clock::now();
    if (trace) trace->verify = t1 - t0;
    if (!ok) {
        throw Error(ErrorCode::signature_invalid, "envelope signature did not verify");
    }

    if (trace) ++trace->decrypt_stage_entries;
    const RsaKeyPair& own = state.own_keys;
    Bytes plaintext;
    if (env.suite == CipherSuite::RSA) {
        if (!env.iv.empty() || !env.wrapped_key.empty()) {
            throw Error(ErrorCode::corrupt_ciphertext, "RSA envelope carries symmetric fields");
        }
        plaintext = rsa_decrypt_blockwise(own.d, own.n, primitives::parse_blocks(env.ciphertext, own.n.byte_length()));
    } else if (env.suite == CipherSuite::AES || env.suite == CipherSuite::DES) {
        const std::size_t key_octets = env.suite == CipherSuite::AES ? 16 : 8;
        Bytes key_bytes = rsa_decrypt_blockwise(own.d, own.n, env.wrapped_key);
        if (key_bytes.size() != key_octets || env.iv.size() != block_size(env.suite)) {
            throw Error(ErrorCode::corrupt_ciphertext, "session key or IV has the wrong length");
        }
        plaintext = primitives::cbc_open(env.suite, {std::move(key_bytes), env.suite}, env.iv, env.ciphertext);
    } else {
        throw Error(ErrorCode::corrupt_ciphertext, "unknown cipher suite");
    }
    if (trace) trace->decrypt = Clock::now() - t1;
    return plaintext;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

StepResult close_with(SessionState s, ErrorCode code) {
    s.phase = Phase::CLOSED;
    s.pending.reset();
    return {std::move(s), {action::ReportFailure{code}}};
}

StepResult retry_or_close(SessionState s) {
    if (s.retries < s.max_retries) {
        ++s.retries;
        return {std::move(s), {action::Retransmit{}}};
    }
    return close_with(std::move(s), ErrorCode::delivery_failed);
}

StepResult command_centre(const SessionState& in, const ProtocolEvent& ev) {
    SessionState s = in;
    const Phase phase = in.phase;
    return std::visit(
        overloaded{
            [&](const event::Start&) -> StepResult {
                if (phase != Phase::IDLE) violation(in, "START");
                s.phase = Phase::AWAITING_KEY;
                s.retries = 0;
                action::SendKeyRequest request{s.own_keys.public_key()};
                return {std::move(s), {std::move(request)}};
            },
            [&](const event::KeyResponseReceived& e) -> StepResult {
                if (phase == Phase::AWAITING_KEY) {
                    s.phase = Phase::READY;
                    s.peer_public = e.peer;
                    s.retries = 0;
                    return {std::move(s), {}};
                }
                // late duplicate of the response we already accepted
                if ((phase == Phase::READY || phase == Phase::AWAITING_ACK) && s.peer_public == e.peer) {
                    return {std::move(s), {}};
                }
                violation(in, "KEY_RESPONSE");
            },
            [&](const event::SendRequested& e) -> StepResult {
                if (phase != Phase::READY) violation(in, "SEND");
                s.phase = Phase::AWAITING_ACK;
                s.pending = e.envelope;
                s.retries = 0;
                return {std::move(s), {action::SendData{e.envelope}}};
            },
            [&](const event::AckReceived& e) -> StepResult {
                if (phase == Phase::AWAITING_ACK) {
                    s.phase = Phase::READY;
                    s.pending.reset();
                    s.retries = 0;
                    s.last_report = e.report;
                    return {std::move(s), {action::RecordTimeReport{e.report}}};
                }
                if (phase == Phase::READY) return {std::move(s), {}};  // duplicate ACK
                violation(in, "ACK");
            },
            [&](const event::ErrorReceived& e) -> StepResult {
                if (phase != Phase::AWAITING_KEY && phase != Phase::AWAITING_ACK) violation(in, "ERROR");
                return close_with(std::move(s), e.code);
            },
            [&](const event::Timeout&) -> StepResult {
                if (phase != Phase::AWAITING_KEY && phase != Phase::AWAITING_ACK) violation(in, "TIMEOUT");
                return retry_or_close(std::move(s));
            },
            [&](const auto&) -> StepResult { violation(in, "event not accepted by the command centre"); },
        },
        ev);
}

StepResult shooter_target(const SessionState& in, const ProtocolEvent& ev) {
    SessionState s = in;
    const Phase phase = in.phase;
    return std::visit(
        overloaded{
            [&](const event::KeyRequestReceived& e) -> StepResult {
                if (phase == Phase::IDLE) {
                    s.phase = Phase::READY;
                    s.peer_public = e.sender;
                    s.retries = 0;
                    action::SendKeyResponse response{s.own_keys.public_key()};
                    return {std::move(s), {std::move(response)}};
                }
                // our KEY_RESPONSE was lost and the request repeated
                if (phase == Phase::READY && s.peer_public == e.sender) {
                    action::SendKeyResponse response{s.own_keys.public_key()};
                    return {std::move(s), {std::move(response)}};
                }
                violation(in, "KEY_REQUEST");
            },
            [&](const event::DataReceived& e) -> StepResult {
                if (phase != Phase::READY) violation(in, "DATA");
                s.retries = 0;
                OpenTrace trace;
                const auto t0 = Clock::now();
                try {
                    Bytes pt = open(s, e.envelope, &trace);
                    TimeReport report{micros(trace.verify), micros(trace.decrypt), micros(Clock::now() - t0)};
                    return {std::move(s), {action::DeliverPlaintext{std::move(pt)}, action::SendAck{report}}};
                } catch (const Error& err) {
                    return {std::move(s), {action::SendError{err.code()}}};
                }
            },
            [&](const event::Timeout&) -> StepResult {
                if (phase == Phase::IDLE) return {std::move(s), {}};
                if (phase != Phase::READY) violation(in, "TIMEOUT");
                if (s.retries < s.max_retries) {
                    ++s.retries;
                    return {std::move(s), {}};
                }
                return close_with(std::move(s), ErrorCode::delivery_failed);
            },
            [&](const auto&) -> StepResult { violation(in, "event not accepted by the shooter target"); },
        },
        ev);
}

} // namespace

StepResult step(const SessionState& state, const ProtocolEvent& event) {
    if (state.role == Role::COMMAND_CENTRE) return command_centre(state, event);
    return shooter_target(state, event);
}

} // namespace ncsh::handshake
