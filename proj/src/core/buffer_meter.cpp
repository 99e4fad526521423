#include "ncsh/buffer_meter.hpp"

#include <algorithm>

namespace ncsh {

void BufferMeter::acquire(std::size_t octets) noexcept {
    current_ += octets;
    peak_ = std::max(peak_, current_);
}

void BufferMeter::release(std::size_t octets) noexcept {
    current_ -= std::min(current_, octets);
}

} // namespace ncsh
