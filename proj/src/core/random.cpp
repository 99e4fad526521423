#include "ncsh/random.hpp"

#include <cstring>

#include "ncsh/error.hpp"

namespace ncsh {

std::uint64_t RandomSource::next_u64() {
    std::uint8_t buf[8];
    fill(buf);
    std::uint64_t v;
    std::memcpy(&v, buf, sizeof v);
    return v;
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
    if (bound == 0) {
        throw Error(ErrorCode::invalid_argument, "uniform bound must be nonzero");
    }
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

double RandomSource::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t word = engine_();
        for (int k = 0; k < 8 && i < out.size(); ++k, ++i) {
            out[i] = static_cast<std::uint8_t>(word >> (8 * k));
        }
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        auto word = device_();
        for (std::size_t k = 0; k < sizeof word && i < out.size(); ++k, ++i) {
            out[i] = static_cast<std::uint8_t>(word >> (8 * k));
        }
    }
}

} // namespace ncsh
