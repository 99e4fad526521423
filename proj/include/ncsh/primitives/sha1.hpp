#pragma once

#include <array>
#include <cstdint>

#include "ncsh/bytes.hpp"

namespace ncsh::primitives {

using Digest = std::array<std::uint8_t, 20>;

// Streaming SHA-1.
class Sha1 {
public:
    Sha1();
    void update(ByteView data);
    Digest finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 5> state_;
    std::array<std::uint8_t, 64> buffer_{};
    std::size_t buffered_ = 0;
    std::uint64_t total_bits_ = 0;
};

Digest sha1(ByteView data);

} // namespace ncsh::primitives
