#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "ncsh/netio/endpoint.hpp"
#include "ncsh/netio/messages.hpp"

namespace ncsh::netio {

struct DeliveryReport {
    bool delivered = false;
    int transmissions = 0;  // times the full datagram set went out
    std::optional<Message> response;
};

using ResponseFilter = std::function<bool(const Message&)>;
// Consulted after each timeout; returning false stops early.
using RetryGate = std::function<bool()>;

// Stop-and-wait for one message: send every datagram, wait for a response the
// filter accepts, and resend the whole set on timeout, at most max_retries
// times. Running out of retries is reported, not thrown; socket failures
// propagate as socket-error.
DeliveryReport send_reliable(DatagramEndpoint& endpoint, const std::vector<Bytes>& datagrams,
                             std::chrono::milliseconds timeout, int max_retries, const ResponseFilter& accept,
                             const RetryGate& retry = {});

} // namespace ncsh::netio
