#pragma once

#include <cstddef>

#include "ncsh/types.hpp"

namespace ncsh::handshake {

struct SuiteParams {
    CipherSuite suite = CipherSuite::AES;
    std::size_t rsa_modulus_bits = 512;
    std::size_t sym_key_octets = 16;
    SigMode sig_mode = SigMode::DIGEST;

    friend bool operator==(const SuiteParams&, const SuiteParams&) = default;
};

// RSA modulus size for a security level: L1 512, L2 1024, L3 2048.
std::size_t modulus_bits_for(SecurityLevel level) noexcept;

// Runtime security-level calibration. Pure and deterministic.
SuiteParams calibrate(SecurityLevel level, CipherSuite suite) noexcept;

} // namespace ncsh::handshake
