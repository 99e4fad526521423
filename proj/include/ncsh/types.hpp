#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ncsh {

enum class SecurityLevel { L1, L2, L3 };
enum class CipherSuite : std::uint8_t { AES = 1, DES = 2, RSA = 3 };
enum class SigMode : std::uint8_t { DIGEST = 1, LITERAL = 2 };

std::string_view to_string(SecurityLevel level) noexcept;
std::string_view to_string(CipherSuite suite) noexcept;
std::string_view to_string(SigMode mode) noexcept;

std::optional<SecurityLevel> parse_level(std::string_view text);
// Accepts aes|des|rsa in any case.
std::optional<CipherSuite> parse_suite(std::string_view text);

// Symmetric block size in octets; 0 for the RSA suite.
std::size_t block_size(CipherSuite suite) noexcept;

} // namespace ncsh
