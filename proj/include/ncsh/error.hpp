#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncsh {

enum class ErrorCode {
    invalid_argument,
    not_invertible,
    no_inverse,
    keygen_failure,
    block_too_large,
    corrupt_ciphertext,
    corrupt_signature,
    incompatible_moduli,
    signature_invalid,
    protocol_violation,
    bad_magic,
    bad_version,
    bad_checksum,
    truncated,
    bad_length,
    bad_fragment,
    unknown_msg_type,
    missing_fragment,
    conflicting_duplicate,
    delivery_failed,
    socket_error,
    io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so callers
// can branch on the failure class without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ncsh
