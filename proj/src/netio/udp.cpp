#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <utility>

#include <arpa/inet.h>

#include "ncsh/error.hpp"
#include "ncsh/netio/endpoint.hpp"

namespace ncsh::netio {

static_assert(sizeof(sockaddr_storage) <= 128);

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::socket_error, what + ": " + std::strerror(errno));
}

struct AddrInfo {
    addrinfo* head = nullptr;
    ~AddrInfo() {
        if (head) freeaddrinfo(head);
    }
};

AddrInfo resolve(const char* host, std::uint16_t port, bool passive) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_DGRAM;
    hints.ai_flags = passive ? AI_PASSIVE : 0;
    AddrInfo res;
    const std::string service = std::to_string(port);
    if (int rc = getaddrinfo(host, service.c_str(), &hints, &res.head); rc != 0) {
        throw Error(ErrorCode::socket_error, std::string("cannot resolve address: ") + gai_strerror(rc));
    }
    return res;
}

} // namespace

std::uint16_t listen_port_from_env() {
    if (const char* v = std::getenv("NCSH_PORT")) {
        char* end = nullptr;
        const long port = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && port > 0 && port <= 65535) return static_cast<std::uint16_t>(port);
    }
    return kDefaultListenPort;
}

UdpEndpoint UdpEndpoint::bind(std::uint16_t port, const std::string& host) {
    AddrInfo res = resolve(host.empty() ? nullptr : host.c_str(), port, true);
    // Prefer an IPv6 socket that also accepts IPv4 when the host allows it.
    for (int pass = 0; pass < 2; ++pass) {
        for (addrinfo* ai = res.head; ai; ai = ai->ai_next) {
            if ((pass == 0) != (ai->ai_family == AF_INET6)) continue;
            int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
            if (fd < 0) continue;
            if (ai->ai_family == AF_INET6) {
                int off = 0;
                ::setsockopt(fd, IPPROTO_IPV6, IPV6_V6ONLY, &off, sizeof off);
            }
            if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0) return UdpEndpoint(fd, false);
            ::close(fd);
        }
    }
    fail("cannot bind UDP port " + std::to_string(port));
}

UdpEndpoint UdpEndpoint::connect(const std::string& host, std::uint16_t port) {
    AddrInfo res = resolve(host.c_str(), port, false);
    for (addrinfo* ai = res.head; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) return UdpEndpoint(fd, true);
        ::close(fd);
    }
    fail("cannot reach " + host + ":" + std::to_string(port));
}

UdpEndpoint::UdpEndpoint(UdpEndpoint&& other) noexcept { *this = std::move(other); }

UdpEndpoint& UdpEndpoint::operator=(UdpEndpoint&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
        connected_ = other.connected_;
        have_peer_ = other.have_peer_;
        std::memcpy(peer_, other.peer_, sizeof peer_);
        peer_len_ = other.peer_len_;
    }
    return *this;
}

UdpEndpoint::~UdpEndpoint() {
    if (fd_ >= 0) ::close(fd_);
}

void UdpEndpoint::send(ByteView datagram) {
    ssize_t n;
    if (connected_) {
        n = ::send(fd_, datagram.data(), datagram.size(), 0);
    } else {
        if (!have_peer_) throw Error(ErrorCode::socket_error, "no peer to reply to");
        n = ::sendto(fd_, datagram.data(), datagram.size(), 0, reinterpret_cast<const sockaddr*>(peer_), peer_len_);
    }
    // A refused earlier datagram surfaces here on connected sockets; the
    // retransmission policy deals with an absent peer.
    if (n < 0 && errno != ECONNREFUSED) fail("send failed");
}

std::optional<Bytes> UdpEndpoint::receive(std::chrono::milliseconds timeout) {
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + timeout;
    Bytes buf(65536);
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (left.count() < 0) return std::nullopt;
        pollfd p{fd_, POLLIN, 0};
        const int rc = ::poll(&p, 1, static_cast<int>(left.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            fail("poll failed");
        }
        if (rc == 0) return std::nullopt;
        sockaddr_storage from{};
        socklen_t from_len = sizeof from;
        const ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), 0, reinterpret_cast<sockaddr*>(&from), &from_len);
        if (n < 0) {
            if (errno == EINTR || errno == ECONNREFUSED) continue;
            fail("receive failed");
        }
        if (!connected_) {
            std::memcpy(peer_, &from, from_len);
            peer_len_ = from_len;
            have_peer_ = true;
        }
        buf.resize(static_cast<std::size_t>(n));
        return buf;
    }
}

std::uint16_t UdpEndpoint::local_port() const {
    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail("getsockname failed");
    if (addr.ss_family == AF_INET6) return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
    return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

} // namespace ncsh::netio
