#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "ncsh/bytes.hpp"

namespace ncsh::netio {

inline constexpr std::uint16_t kDefaultListenPort = 47001;

// Listener port: NCSH_PORT when set and valid, else the default.
std::uint16_t listen_port_from_env();

// One side of a datagram path. send() goes to the current peer: the connected
// address for a client, the most recent sender for a listener.
class DatagramEndpoint {
public:
    virtual ~DatagramEndpoint() = default;
    virtual void send(ByteView datagram) = 0;
    // Waits up to timeout; nullopt when nothing arrived.
    virtual std::optional<Bytes> receive(std::chrono::milliseconds timeout) = 0;
};

// UDP socket over getaddrinfo, so IPv4 and IPv6 work alike. Failures raise
// socket-error.
class UdpEndpoint final : public DatagramEndpoint {
public:
    static UdpEndpoint bind(std::uint16_t port, const std::string& host = "");
    static UdpEndpoint connect(const std::string& host, std::uint16_t port);

    UdpEndpoint(UdpEndpoint&& other) noexcept;
    UdpEndpoint& operator=(UdpEndpoint&& other) noexcept;
    UdpEndpoint(const UdpEndpoint&) = delete;
    UdpEndpoint& operator=(const UdpEndpoint&) = delete;
    ~UdpEndpoint() override;

    void send(ByteView datagram) override;
    std::optional<Bytes> receive(std::chrono::milliseconds timeout) override;

    std::uint16_t local_port() const;

private:
    explicit UdpEndpoint(int fd, bool connected) : fd_(fd), connected_(connected) {}

    int fd_ = -1;
    bool connected_ = false;
    bool have_peer_ = false;
    alignas(8) unsigned char peer_[128] = {};  // sockaddr_storage
    unsigned peer_len_ = 0;
};

} // namespace ncsh::netio
