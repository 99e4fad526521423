#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncsh/cli/cli.hpp"
#include "ncsh/error.hpp"
#include "ncsh/handshake/suite.hpp"
#include "ncsh/netio/peers.hpp"
#include "ncsh/primitives/keyfile.hpp"

namespace ncsh::cli {

using namespace std::chrono_literals;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::delivery_failed: return kExitDelivery;
    case ErrorCode::io_error:
    case ErrorCode::socket_error: return kExitIo;
    default: return kExitCrypto;
    }
}

// Valid UTF-8 without control characters other than whitespace.
bool printable_utf8(ByteView data) {
    std::size_t i = 0;
    while (i < data.size()) {
        const std::uint8_t c = data[i];
        std::size_t extra;
        std::uint32_t cp;
        if (c < 0x80) {
            if (c < 0x20 && c != '\n' && c != '\t' && c != '\r') return false;
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + extra >= data.size()) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((data[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (data[i + k] & 0x3F);
        }
        static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += extra + 1;
    }
    return true;
}

handshake::RsaKeyPair load_or_generate(const std::string& prefix, SecurityLevel level, std::ostream& err) {
    if (!prefix.empty()) return primitives::read_private_key_file(prefix + ".key");
    SystemRandom rng;
    err << "generating a " << handshake::modulus_bits_for(level) << "-bit key\n";
    return primitives::rsa_keygen(handshake::modulus_bits_for(level), rng);
}

int run_keygen(const Keygen& cmd, std::ostream& out) {
    SystemRandom rng;
    const auto key = primitives::rsa_keygen(handshake::modulus_bits_for(cmd.level), rng);
    primitives::write_key_files(cmd.out_prefix, key);
    out << "wrote " << cmd.out_prefix << ".pub and " << cmd.out_prefix << ".key (" << key.modulus_bits
        << "-bit, " << to_string(cmd.level) << ")\n";
    return kExitOk;
}

int run_listen(const Listen& cmd, std::ostream& out, std::ostream& err) {
    const auto keys = load_or_generate(cmd.key_prefix, cmd.level, err);
    auto socket = netio::UdpEndpoint::bind(cmd.port);
    netio::ShooterTargetServer server(keys);
    out << "listening on UDP port " << socket.local_port() << '\n' << std::flush;

    std::size_t reported = 0;
    auto quiet_since = std::chrono::steady_clock::now();
    // After the session ends, keep answering repeats until the line is quiet.
    const auto linger = 2 * handshake::kRetransmitTimeout;
    for (;;) {
        if (auto d = socket.receive(handshake::kRetransmitTimeout)) {
            server.handle_datagram(*d, socket);
            quiet_since = std::chrono::steady_clock::now();
        } else {
            server.on_idle();
        }
        for (; reported < server.outcomes().size(); ++reported) {
            const auto& o = server.outcomes()[reported];
            if (o.ok) {
                out << printable(o.plaintext) << '\n';
                err << "session " << o.session_id << ": verify " << o.report.verify_us << " us, decrypt "
                    << o.report.decrypt_us << " us, total " << o.report.total_us << " us\n";
            } else {
                err << "session " << o.session_id << " failed: " << to_string(o.error) << '\n';
            }
            out << std::flush;
        }
        if (cmd.once && !server.outcomes().empty() &&
            std::chrono::steady_clock::now() - quiet_since >= linger) {
            const auto& first = server.outcomes().front();
            return first.ok ? kExitOk : exit_code_for(first.error);
        }
    }
}

Bytes message_of(const Send& cmd) {
    if (cmd.message) return to_bytes(*cmd.message);
    std::ifstream f(*cmd.file, std::ios::binary);
    if (!f) throw Error(ErrorCode::io_error, "cannot read " + *cmd.file);
    std::stringstream ss;
    ss << f.rdbuf();
    return to_bytes(ss.str());
}

int run_bench_cmd(const BenchRun& cmd, std::ostream& out, std::ostream& err) {
    SystemRandom rng;
    const auto records = bench::run_bench(cmd.config, rng);
    std::ostream& summary_out = cmd.out ? out : err;
    if (cmd.out) {
        bench::write_csv(records, std::filesystem::path(*cmd.out));
        out << "wrote " << records.size() << " records to " << *cmd.out << '\n';
    } else {
        bench::write_csv(records, out);
    }
    if (cmd.json) bench::write_json(records, std::filesystem::path(*cmd.json));
    if (cmd.config.suites.size() >= 2) bench::print_summary(bench::summarize(records), summary_out);
    return kExitOk;
}

} // namespace

std::string printable(ByteView data) {
    if (printable_utf8(data)) return std::string(data.begin(), data.end());
    return to_hex(data);
}

int run_send(const Send& cmd, netio::DatagramEndpoint& endpoint, std::ostream& out, std::ostream& err) try {
    const Bytes message = message_of(cmd);
    const auto keys = load_or_generate(cmd.key_prefix, cmd.level, err);
    netio::ClientOptions options;
    if (cmd.peer_prefix) options.expected_peer = primitives::read_public_key_file(*cmd.peer_prefix + ".pub").key;

    SystemRandom rng;
    const auto params = handshake::calibrate(cmd.level, cmd.suite);
    const auto result = netio::run_command_centre(endpoint, keys, params, message, rng, rng.next_u64(), options);
    if (!result.ok) {
        err << "send failed: " << to_string(result.error) << '\n';
        return exit_code_for(result.error);
    }
    out << "delivered " << message.size() << " octets with " << to_string(cmd.suite) << " at " << to_string(cmd.level)
        << '\n';
    out << "round trip " << result.round_trip.count() << " us";
    if (result.key_transmissions + result.data_transmissions > 2) {
        out << " (" << result.key_transmissions + result.data_transmissions - 2 << " retransmissions)";
    }
    out << '\n';
    if (result.peer_report) {
        out << "peer verify " << result.peer_report->verify_us << " us, decrypt " << result.peer_report->decrypt_us
            << " us, total " << result.peer_report->total_us << " us\n";
    }
    return kExitOk;
} catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
}

int run(const Command& command, std::ostream& out, std::ostream& err) {
    try {
        return std::visit(
            [&](const auto& cmd) -> int {
                using T = std::decay_t<decltype(cmd)>;
                if constexpr (std::is_same_v<T, Keygen>) {
                    return run_keygen(cmd, out);
                } else if constexpr (std::is_same_v<T, Listen>) {
                    return run_listen(cmd, out, err);
                } else if constexpr (std::is_same_v<T, Send>) {
                    auto socket = netio::UdpEndpoint::connect(cmd.host, cmd.port);
                    return run_send(cmd, socket, out, err);
                } else if constexpr (std::is_same_v<T, BenchRun>) {
                    return run_bench_cmd(cmd, out, err);
                } else {
                    return selftest(out) ? kExitOk : kExitCrypto;
                }
            },
            command);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    try {
        return run(parse_args(args), out, err);
    } catch (const UsageError& e) {
        if (e.help_requested()) {
            out << e.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n\n" << e.help();
        return kExitUsage;
    }
}

} // namespace ncsh::cli
