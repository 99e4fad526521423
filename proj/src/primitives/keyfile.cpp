#include "ncsh/primitives/keyfile.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ncsh/error.hpp"

namespace ncsh::primitives {

namespace {

std::map<std::string, std::string> parse_fields(std::string_view text) {
    std::map<std::string, std::string> fields;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::invalid_argument, "key file line without '=': " + line);
        }
        std::string name = line.substr(0, eq);
        if (name != "level" && name != "n" && name != "e" && name != "d") {
            throw Error(ErrorCode::invalid_argument, "unknown key file field: " + name);
        }
        if (!fields.emplace(name, line.substr(eq + 1)).second) {
            throw Error(ErrorCode::invalid_argument, "duplicate key file field: " + name);
        }
    }
    return fields;
}

const std::string& require(const std::map<std::string, std::string>& fields, const std::string& name) {
    auto it = fields.find(name);
    if (it == fields.end()) {
        throw Error(ErrorCode::invalid_argument, "key file missing field: " + name);
    }
    return it->second;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw Error(ErrorCode::io_error, "cannot write " + path.string());
    }
}

} // namespace

std::string format_public_key(const RsaKeyPair& key) {
    std::string out;
    out += "level=" + std::string(to_string(key.level)) + "\n";
    out += "n=" + key.n.to_hex() + "\n";
    out += "e=" + key.e.to_hex() + "\n";
    return out;
}

std::string format_private_key(const RsaKeyPair& key) {
    return format_public_key(key) + "d=" + key.d.to_hex() + "\n";
}

PublicKeyFile parse_public_key(std::string_view text) {
    auto fields = parse_fields(text);
    auto level = parse_level(require(fields, "level"));
    if (!level) throw Error(ErrorCode::invalid_argument, "bad security level in key file");
    return {*level, {BigUint::from_hex(require(fields, "e")), BigUint::from_hex(require(fields, "n"))}};
}

RsaKeyPair parse_private_key(std::string_view text) {
    auto fields = parse_fields(text);
    auto pub = parse_public_key(text);
    RsaKeyPair key{pub.key.n, pub.key.e, BigUint::from_hex(require(fields, "d")), pub.key.n.bit_length(), pub.level};
    return key;
}

void write_key_files(const std::filesystem::path& prefix, const RsaKeyPair& key) {
    write_file(std::filesystem::path(prefix.string() + ".pub"), format_public_key(key));
    write_file(std::filesystem::path(prefix.string() + ".key"), format_private_key(key));
}

PublicKeyFile read_public_key_file(const std::filesystem::path& path) {
    return parse_public_key(read_file(path));
}

RsaKeyPair read_private_key_file(const std::filesystem::path& path) {
    return parse_private_key(read_file(path));
}

} // namespace ncsh::primitives
