#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncsh {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view text);

void put_u8(Bytes& out, std::uint8_t v);
void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
void put_bytes(Bytes& out, ByteView data);

// Sequential big-endian reader over a byte view. Reads past the end throw
// Error(truncated).
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint16_t u16_be();
    std::uint32_t u32_be();
    std::uint64_t u64_be();
    ByteView take(std::size_t n);

    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    std::size_t position() const noexcept { return pos_; }
    bool empty() const noexcept { return remaining() == 0; }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

} // namespace ncsh
