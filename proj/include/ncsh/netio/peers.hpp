#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ncsh/handshake/session.hpp"
#include "ncsh/netio/endpoint.hpp"
#include "ncsh/netio/messages.hpp"

namespace ncsh::netio {

using handshake::RsaKeyPair;
using handshake::SessionState;
using handshake::SuiteParams;

// How one shooter-target session ended.
struct SessionOutcome {
    std::uint64_t session_id = 0;
    bool ok = false;
    ErrorCode error = ErrorCode::protocol_violation;  // meaningful when !ok
    Bytes plaintext;
    TimeReport report;
};

// Shooter-target side. Serves one session at a time; a KEY_REQUEST under a
// new session id replaces the current session. Repeated datagrams get the
// cached reply, so a lost ACK never causes a second delivery.
class ShooterTargetServer {
public:
    explicit ShooterTargetServer(RsaKeyPair keys, std::size_t max_fragment = kDefaultMaxFragment);

    void handle_datagram(ByteView datagram, DatagramEndpoint& reply);
    // Called when the receive loop times out with nothing to read.
    void on_idle();

    const std::vector<SessionOutcome>& outcomes() const noexcept { return outcomes_; }
    std::size_t rejected_datagrams() const noexcept { return receiver_.rejected(); }
    // A session is open and has not yet produced an outcome.
    bool session_pending() const noexcept { return session_ && !finished_; }

private:
    void reply_with(DatagramEndpoint& reply, MsgType type, Bytes payload, bool cache);
    void finish(SessionOutcome outcome);
    void handle_key_request(const Message& msg, DatagramEndpoint& reply);
    void handle_data(const Message& msg, DatagramEndpoint& reply);

    RsaKeyPair keys_;
    std::size_t max_fragment_;
    MessageReceiver receiver_;
    std::optional<SessionState> session_;
    bool finished_ = false;
    std::optional<Bytes> last_data_;
    std::vector<Bytes> last_reply_;
    std::vector<SessionOutcome> outcomes_;
};

struct ClientOptions {
    std::chrono::milliseconds timeout = handshake::kRetransmitTimeout;
    int max_retries = handshake::kMaxRetries;
    std::size_t max_fragment = kDefaultMaxFragment;
    // When set, a KEY_RESPONSE carrying any other key fails the session.
    std::optional<RsaPublicKey> expected_peer;
};

struct WireEntry {
    bool outbound = true;
    MsgType type = MsgType::KEY_REQUEST;

    friend bool operator==(const WireEntry&, const WireEntry&) = default;
};

struct ClientOutcome {
    bool ok = false;
    ErrorCode error = ErrorCode::protocol_violation;  // meaningful when !ok
    std::optional<TimeReport> peer_report;
    std::chrono::microseconds round_trip{0};  // START to ACK
    int key_transmissions = 0;
    int data_transmissions = 0;
    std::vector<WireEntry> wire;  // distinct messages in order, retransmissions excluded
    std::optional<RsaPublicKey> peer;
};

// Command-centre side: drives one session from START to ACK over endpoint.
ClientOutcome run_command_centre(DatagramEndpoint& endpoint, const RsaKeyPair& own, const SuiteParams& params,
                                 ByteView plaintext, RandomSource& rng, std::uint64_t session_id,
                                 const ClientOptions& options = {});

} // namespace ncsh::netio
