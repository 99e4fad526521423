#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ncsh/bench/bench.hpp"
#include "ncsh/netio/endpoint.hpp"
#include "ncsh/types.hpp"

namespace ncsh::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitDelivery = 3,
    kExitCrypto = 4,
    kExitIo = 5,
};

struct Keygen {
    SecurityLevel level = SecurityLevel::L1;
    std::string out_prefix;
};

struct Listen {
    std::uint16_t port = netio::kDefaultListenPort;
    std::string key_prefix;  // empty: fresh key at `level`
    SecurityLevel level = SecurityLevel::L1;
    bool once = false;
};

struct Send {
    std::string host;
    std::uint16_t port = netio::kDefaultListenPort;
    std::string key_prefix;                 // empty: fresh key at `level`
    std::optional<std::string> peer_prefix;  // pin the listener's .pub
    CipherSuite suite = CipherSuite::AES;
    SecurityLevel level = SecurityLevel::L1;
    std::optional<std::string> message;
    std::optional<std::string> file;  // exactly one of message / file
};

struct BenchRun {
    bench::BenchConfig config;
    std::optional<std::string> out;   // CSV path; stdout when absent
    std::optional<std::string> json;  // optional JSON mirror
};

struct Selftest {};

using Command = std::variant<Keygen, Listen, Send, BenchRun, Selftest>;

// Bad command line. help_requested marks --help, which is not an error.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& what, std::string help, bool help_requested = false)
        : std::runtime_error(what), help_(std::move(help)), help_requested_(help_requested) {}
    const std::string& help() const noexcept { return help_; }
    bool help_requested() const noexcept { return help_requested_; }

private:
    std::string help_;
    bool help_requested_;
};

// args excludes the program name.
Command parse_args(const std::vector<std::string>& args);

int run(const Command& command, std::ostream& out, std::ostream& err);

// Sender over a caller-supplied endpoint (tests route it through a simulated link).
int run_send(const Send& cmd, netio::DatagramEndpoint& endpoint, std::ostream& out, std::ostream& err);

// Checks the primitive vectors and protocol properties; true when all pass.
bool selftest(std::ostream& out);

// parse_args + run with usage errors mapped to exit code 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// UTF-8 text as is, anything else as hex.
std::string printable(ByteView data);

} // namespace ncsh::cli
