#include <algorithm>
#include <charconv>

#include "CLI11.hpp"
#include "ncsh/cli/cli.hpp"

namespace ncsh::cli {

namespace {

SecurityLevel level_arg(const std::string& text, const std::string& help) {
    auto level = parse_level(text);
    if (!level) throw UsageError("unknown security level '" + text + "' (expected L1, L2 or L3)", help);
    return *level;
}

CipherSuite suite_arg(const std::string& text, const std::string& help) {
    auto suite = parse_suite(text);
    if (!suite) throw UsageError("unknown suite '" + text + "' (expected aes, des or rsa)", help);
    return *suite;
}

std::vector<std::size_t> sizes_arg(const std::string& text, const std::string& help) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view item(text.data() + start, comma - start);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw UsageError("bad --sizes list '" + text + "'", help);
        }
        out.push_back(value);
        start = comma + 1;
    }
    return out;
}

} // namespace

Command parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Secure command-centre / shooter-target handshake over UDP", "ncsh"};
    app.require_subcommand(1);

    std::string level = "L1";
    std::string suite = "aes";
    std::string out_path;
    std::string key_prefix;
    std::string peer_prefix;
    std::string msg;
    std::string file;
    std::string sizes;
    std::string json;
    std::string host;
    int port = -1;
    int trials = 10;
    bool once = false;
    bool include_keygen = false;

    auto* keygen = app.add_subcommand("keygen", "Generate an RSA key pair as <out>.pub and <out>.key");
    keygen->add_option("--level", level, "Security level L1|L2|L3 (512/1024/2048-bit RSA)");
    keygen->add_option("--out", out_path, "Output path prefix")->required();

    auto* listen = app.add_subcommand("listen", "Run the shooter target: serve the public key and receive messages");
    listen->add_option("--port", port, "UDP port (default NCSH_PORT or 47001)");
    listen->add_option("--key", key_prefix, "Key pair prefix; a fresh key is generated when omitted");
    listen->add_option("--level", level, "Level for a fresh key");
    listen->add_flag("--once", once, "Exit after one completed or failed session");

    auto* send = app.add_subcommand("send", "Run the command centre: fetch the key, encrypt, sign and send");
    send->add_option("host", host, "Listener host")->required();
    send->add_option("--port", port, "UDP port (default NCSH_PORT or 47001)");
    send->add_option("--key", key_prefix, "Own key pair prefix; a fresh key is generated when omitted");
    send->add_option("--peer", peer_prefix, "Expected listener key prefix (<peer>.pub)");
    send->add_option("--suite", suite, "Payload cipher aes|des|rsa");
    send->add_option("--level", level, "Security level L1|L2|L3");
    auto* msg_opt = send->add_option("--msg", msg, "Message text");
    auto* file_opt = send->add_option("--file", file, "Read the message from a file");
    msg_opt->excludes(file_opt);

    auto* benchcmd = app.add_subcommand("bench", "Time AES, DES and RSA encryption across text sizes");
    benchcmd->add_option("--sizes", sizes, "Comma-separated text sizes in octets");
    benchcmd->add_option("--trials", trials, "Trials per measurement (median reported)");
    benchcmd->add_option("--level", level, "Security level L1|L2|L3");
    benchcmd->add_flag("--include-keygen", include_keygen, "Generate fresh RSA keys for every trial");
    benchcmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    benchcmd->add_option("--json", json, "Also write the records as JSON");

    auto* selftestcmd = app.add_subcommand("selftest", "Run the built-in vector and property checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError("help requested", app.help(), true);
    } catch (const CLI::ParseError& e) {
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw UsageError(e.what(), sub->help());
    }

    auto* chosen = app.get_subcommands().front();
    const std::string help = chosen->help();
    if (chosen == send && msg_opt->count() + file_opt->count() != 1) {
        throw UsageError("send needs exactly one of --msg or --file", help);
    }
    if (port == 0 || port > 65535) throw UsageError("--port must be in 1..65535", help);
    const auto port_or_default = [&] {
        return port > 0 ? static_cast<std::uint16_t>(port) : netio::listen_port_from_env();
    };

    if (chosen == keygen) return Keygen{level_arg(level, help), out_path};
    if (chosen == listen) return Listen{port_or_default(), key_prefix, level_arg(level, help), once};
    if (chosen == send) {
        Send s;
        s.host = host;
        s.port = port_or_default();
        s.key_prefix = key_prefix;
        if (!peer_prefix.empty()) s.peer_prefix = peer_prefix;
        s.suite = suite_arg(suite, help);
        s.level = level_arg(level, help);
        if (msg_opt->count()) s.message = msg;
        if (file_opt->count()) s.file = file;
        return s;
    }
    if (chosen == benchcmd) {
        BenchRun b;
        if (!sizes.empty()) b.config.sizes = sizes_arg(sizes, help);
        b.config.trials = trials;
        b.config.level = level_arg(level, help);
        b.config.include_keygen = include_keygen;
        try {
            bench::validate(b.config);
        } catch (const std::exception& e) {
            throw UsageError(e.what(), help);
        }
        if (!out_path.empty()) b.out = out_path;
        if (!json.empty()) b.json = json;
        return b;
    }
    (void)selftestcmd;
    return Selftest{};
}

} // namespace ncsh::cli
