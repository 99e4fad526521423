#include "ncsh/error.hpp"

namespace ncsh {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::not_invertible: return "not-invertible";
    case ErrorCode::no_inverse: return "no-inverse";
    case ErrorCode::keygen_failure: return "keygen-failure";
    case ErrorCode::block_too_large: return "block-too-large";
    case ErrorCode::corrupt_ciphertext: return "corrupt-ciphertext";
    case ErrorCode::corrupt_signature: return "corrupt-signature";
    case ErrorCode::incompatible_moduli: return "incompatible-moduli";
    case ErrorCode::signature_invalid: return "signature-invalid";
    case ErrorCode::protocol_violation: return "protocol-violation";
    case ErrorCode::bad_magic: return "bad-magic";
    case ErrorCode::bad_version: return "bad-version";
    case ErrorCode::bad_checksum: return "bad-checksum";
    case ErrorCode::truncated: return "truncated";
    case ErrorCode::bad_length: return "bad-length";
    case ErrorCode::bad_fragment: return "bad-fragment";
    case ErrorCode::unknown_msg_type: return "unknown-msg-type";
    case ErrorCode::missing_fragment: return "missing-fragment";
    case ErrorCode::conflicting_duplicate: return "conflicting-duplicate";
    case ErrorCode::delivery_failed: return "delivery-failed";
    case ErrorCode::socket_error: return "socket-error";
    case ErrorCode::io_error: return "io-error";
    }
    return "unknown-error";
}

} // namespace ncsh
