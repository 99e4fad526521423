#include "ncsh/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace ncsh {

std::string_view to_string(SecurityLevel level) noexcept {
    switch (level) {
    case SecurityLevel::L1: return "L1";
    case SecurityLevel::L2: return "L2";
    case SecurityLevel::L3: return "L3";
    }
    return "?";
}

std::string_view to_string(CipherSuite suite) noexcept {
    switch (suite) {
    case CipherSuite::AES: return "AES";
    case CipherSuite::DES: return "DES";
    case CipherSuite::RSA: return "RSA";
    }
    return "?";
}

std::string_view to_string(SigMode mode) noexcept {
    return mode == SigMode::DIGEST ? "DIGEST" : "LITERAL";
}

std::optional<SecurityLevel> parse_level(std::string_view text) {
    if (text == "L1") return SecurityLevel::L1;
    if (text == "L2") return SecurityLevel::L2;
    if (text == "L3") return SecurityLevel::L3;
    return std::nullopt;
}

std::optional<CipherSuite> parse_suite(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "aes") return CipherSuite::AES;
    if (lower == "des") return CipherSuite::DES;
    if (lower == "rsa") return CipherSuite::RSA;
    return std::nullopt;
}

std::size_t block_size(CipherSuite suite) noexcept {
    switch (suite) {
    case CipherSuite::AES: return 16;
    case CipherSuite::DES: return 8;
    case CipherSuite::RSA: return 0;
    }
    return 0;
}

} // namespace ncsh
