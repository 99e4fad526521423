#include "ncsh/handshake/suite.hpp"

namespace ncsh::handshake {

std::size_t modulus_bits_for(SecurityLevel level) noexcept {
    switch (level) {
    case SecurityLevel::L1: return 512;
    case SecurityLevel::L2: return 1024;
    case SecurityLevel::L3: return 2048;
    }
    return 512;
}

SuiteParams calibrate(SecurityLevel level, CipherSuite suite) noexcept {
    std::size_t sym = 0;
    if (suite == CipherSuite::AES) sym = 16;
    if (suite == CipherSuite::DES) sym = 8;
    return {suite, modulus_bits_for(level), sym, SigMode::DIGEST};
}

} // namespace ncsh::handshake
