#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ncsh/netio/endpoint.hpp"
#include "ncsh/random.hpp"

namespace ncsh::netio {

enum class Direction { a_to_b, b_to_a };

struct LinkEvent {
    Direction direction = Direction::a_to_b;
    std::size_t seq = 0;  // per-direction send counter
    bool dropped = false;
    bool reordered = false;

    friend bool operator==(const LinkEvent&, const LinkEvent&) = default;
};

// Deterministic in-process datagram link with Bernoulli drops and
// adjacent-swap reordering. Time is virtual: a receive() on an empty queue
// returns at once and advances the clock by the timeout.
class LossyLink {
public:
    using DropFilter = std::function<bool(Direction, std::size_t seq, ByteView datagram)>;
    using Tamper = std::function<void(Direction, Bytes& datagram)>;
    using Responder = std::function<void(ByteView datagram, DatagramEndpoint& reply)>;

    LossyLink(std::uint64_t seed, double drop_rate, double reorder_rate);
    LossyLink(const LossyLink&) = delete;
    LossyLink& operator=(const LossyLink&) = delete;

    DatagramEndpoint& a() { return a_; }
    DatagramEndpoint& b() { return b_; }

    // Datagrams reaching b are handed to the responder (with b as the reply
    // endpoint) whenever a waits for input, so a server runs in-line.
    void set_responder(Responder r) { responder_ = std::move(r); }
    // Forces extra drops on top of the random ones.
    void set_drop_filter(DropFilter f) { drop_filter_ = std::move(f); }
    // Rewrites datagrams that survive the drop decision.
    void set_tamper(Tamper t) { tamper_ = std::move(t); }

    const std::vector<LinkEvent>& trace() const noexcept { return trace_; }
    std::chrono::milliseconds now() const noexcept { return now_; }

private:
    class End final : public DatagramEndpoint {
    public:
        End(LossyLink& link, Direction outbound) : link_(link), outbound_(outbound) {}
        void send(ByteView datagram) override { link_.transmit(outbound_, datagram); }
        std::optional<Bytes> receive(std::chrono::milliseconds timeout) override;

    private:
        LossyLink& link_;
        Direction outbound_;
    };

    void transmit(Direction dir, ByteView datagram);
    void pump();

    SeededRandom rng_;
    double drop_rate_;
    double reorder_rate_;
    End a_{*this, Direction::a_to_b};
    End b_{*this, Direction::b_to_a};
    std::deque<Bytes> to_a_;
    std::deque<Bytes> to_b_;
    std::size_t seq_[2] = {0, 0};
    std::vector<LinkEvent> trace_;
    std::chrono::milliseconds now_{0};
    Responder responder_;
    DropFilter drop_filter_;
    Tamper tamper_;
    bool pumping_ = false;
};

// Rates must lie in [0, 1]; otherwise invalid-argument.
std::unique_ptr<LossyLink> lossy_link(std::uint64_t seed, double drop_rate, double reorder_rate);

} // namespace ncsh::netio
