#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ncsh/buffer_meter.hpp"
#include "ncsh/error.hpp"
#include "ncsh/handshake/envelope.hpp"
#include "ncsh/handshake/suite.hpp"
#include "ncsh/primitives/rsa.hpp"
#include "ncsh/random.hpp"

namespace ncsh::handshake {

using primitives::RsaKeyPair;

enum class Role { COMMAND_CENTRE, SHOOTER_TARGET };
enum class Phase { IDLE, AWAITING_KEY, READY, AWAITING_ACK, CLOSED };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Phase phase) noexcept;

inline constexpr int kMaxRetries = 5;
inline constexpr std::chrono::milliseconds kRetransmitTimeout{500};

// Shooter-target timing returned to the command centre in the ACK.
struct TimeReport {
    std::uint64_t verify_us = 0;
    std::uint64_t decrypt_us = 0;
    std::uint64_t total_us = 0;

    friend bool operator==(const TimeReport&, const TimeReport&) = default;
};

// peer_public is set in READY and AWAITING_ACK, and may remain set in CLOSED.
// The shooter target learns it from the KEY_REQUEST and pins it (trust on
// first use); the command centre learns it from the KEY_RESPONSE.
struct SessionState {
    Role role = Role::COMMAND_CENTRE;
    Phase phase = Phase::IDLE;
    std::uint64_t session_id = 0;
    RsaKeyPair own_keys;
    std::optional<RsaPublicKey> peer_public;
    SuiteParams params;
    int retries = 0;
    int max_retries = kMaxRetries;
    std::optional<Envelope> pending;          // command centre: DATA awaiting ACK
    std::optional<TimeReport> last_report;    // command centre: latest peer timing
};

SessionState make_session(Role role, std::uint64_t session_id, RsaKeyPair own_keys, SuiteParams params);

// Stage timings and buffer accounting for one seal. The meter covers the
// payload-encryption stage only (session key, IV, cipher output buffers).
struct SealTrace {
    std::chrono::nanoseconds session_key{};
    std::chrono::nanoseconds encrypt{};
    std::chrono::nanoseconds wrap{};
    std::chrono::nanoseconds sign{};
    BufferMeter payload_buffers;
};

struct OpenTrace {
    int verify_attempts = 0;
    int decrypt_stage_entries = 0;  // key unwrap or payload decryption started
    std::chrono::nanoseconds verify{};
    std::chrono::nanoseconds decrypt{};
};

// Encrypts for the peer and signs. Requires phase READY with peer_public set,
// else protocol-violation.
Envelope seal(const SessionState& state, ByteView plaintext, RandomSource& rng, SealTrace* trace = nullptr);

// Verifies the signature first (against env.sender_public, which must match a
// pinned peer key) and only then unwraps and decrypts. Throws
// signature-invalid or corrupt-ciphertext.
Bytes open(const SessionState& state, const Envelope& env, OpenTrace* trace = nullptr);

namespace event {
struct Start {};
struct KeyRequestReceived { RsaPublicKey sender; };
struct KeyResponseReceived { RsaPublicKey peer; };
struct SendRequested { Envelope envelope; };
struct DataReceived { Envelope envelope; };
struct AckReceived { TimeReport report; };
struct ErrorReceived { ErrorCode code; };
struct Timeout {};
} // namespace event

using ProtocolEvent = std::variant<event::Start, event::KeyRequestReceived, event::KeyResponseReceived,
                                   event::SendRequested, event::DataReceived, event::AckReceived,
                                   event::ErrorReceived, event::Timeout>;

namespace action {
struct SendKeyRequest { RsaPublicKey own; };
struct SendKeyResponse { RsaPublicKey own; };
struct SendData { Envelope envelope; };
struct SendAck { TimeReport report; };
struct SendError { ErrorCode code; };
struct Retransmit {};  // resend the last outgoing message unchanged
struct DeliverPlaintext { Bytes plaintext; };
struct RecordTimeReport { TimeReport report; };
struct ReportFailure { ErrorCode code; };
} // namespace action

using ProtocolAction = std::variant<action::SendKeyRequest, action::SendKeyResponse, action::SendData,
                                    action::SendAck, action::SendError, action::Retransmit,
                                    action::DeliverPlaintext, action::RecordTimeReport, action::ReportFailure>;

struct StepResult {
    SessionState state;
    std::vector<ProtocolAction> actions;
};

// Transition function. Side effects (sending, timers) are left to the caller.
// Undefined (phase, event) pairs throw protocol-violation; the input state is
// untouched.
StepResult step(const SessionState& state, const ProtocolEvent& event);

} // namespace ncsh::handshake
