#include "ncsh/netio/lossy_link.hpp"

#include "ncsh/error.hpp"

namespace ncsh::netio {

LossyLink::LossyLink(std::uint64_t seed, double drop_rate, double reorder_rate)
    : rng_(seed), drop_rate_(drop_rate), reorder_rate_(reorder_rate) {
    if (!(drop_rate >= 0.0 && drop_rate <= 1.0) || !(reorder_rate >= 0.0 && reorder_rate <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "link rates must lie in [0, 1]");
    }
}

void LossyLink::transmit(Direction dir, ByteView datagram) {
    const std::size_t seq = seq_[static_cast<int>(dir)]++;
    // Both draws happen for every datagram so the random stream does not
    // depend on the filters.
    const bool random_drop = rng_.unit() < drop_rate_;
    const bool swap = rng_.unit() < reorder_rate_;
    const bool dropped = random_drop || (drop_filter_ && drop_filter_(dir, seq, datagram));
    auto& queue = dir == Direction::a_to_b ? to_b_ : to_a_;
    const bool reordered = !dropped && swap && !queue.empty();
    trace_.push_back({dir, seq, dropped, reordered});
    if (dropped) return;
    Bytes copy(datagram.begin(), datagram.end());
    if (tamper_) tamper_(dir, copy);
    if (reordered) {
        queue.insert(queue.end() - 1, std::move(copy));
    } else {
        queue.push_back(std::move(copy));
    }
}

void LossyLink::pump() {
    if (!responder_ || pumping_) return;
    pumping_ = true;
    while (!to_b_.empty()) {
        Bytes d = std::move(to_b_.front());
        to_b_.pop_front();
        responder_(d, b_);
    }
    pumping_ = false;
}

std::optional<Bytes> LossyLink::End::receive(std::chrono::milliseconds timeout) {
    auto& queue = outbound_ == Direction::a_to_b ? link_.to_a_ : link_.to_b_;
    if (outbound_ == Direction::a_to_b) link_.pump();
    if (queue.empty()) {
        link_.now_ += timeout;
        return std::nullopt;
    }
    Bytes d = std::move(queue.front());
    queue.pop_front();
    return d;
}

std::unique_ptr<LossyLink> lossy_link(std::uint64_t seed, double drop_rate, double reorder_rate) {
    return std::make_unique<LossyLink>(seed, drop_rate, reorder_rate);
}

} // namespace ncsh::netio
