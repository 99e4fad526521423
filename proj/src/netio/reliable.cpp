#include "ncsh/netio/reliable.hpp"

namespace ncsh::netio {

DeliveryReport send_reliable(DatagramEndpoint& endpoint, const std::vector<Bytes>& datagrams,
                             std::chrono::milliseconds timeout, int max_retries, const ResponseFilter& accept,
                             const RetryGate& retry) {
    using Clock = std::chrono::steady_clock;
    if (timeout.count() <= 0 || max_retries < 0) {
        throw Error(ErrorCode::invalid_argument, "timeout must be positive and retries non-negative");
    }
    DeliveryReport report;
    MessageReceiver receiver;
    for (;;) {
        for (const Bytes& d : datagrams) endpoint.send(d);
        ++report.transmissions;
        const auto deadline = Clock::now() + timeout;
        for (;;) {
            const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
            if (left.count() <= 0) break;
            auto datagram = endpoint.receive(left);
            if (!datagram) break;
            auto msg = receiver.accept(*datagram);
            if (msg && accept(*msg)) {
                report.delivered = true;
                report.response = std::move(msg);
                return report;
            }
        }
        if (retry && !retry()) return report;
        if (report.transmissions > max_retries) return report;
    }
}

} // namespace ncsh::netio
