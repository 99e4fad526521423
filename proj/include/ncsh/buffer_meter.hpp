#pragma once

#include <cstddef>

namespace ncsh {

// Tracks live transient buffer octets and their high-water mark. Code on the
// seal path takes a nullable BufferMeter*; a null meter costs nothing.
class BufferMeter {
public:
    void acquire(std::size_t octets) noexcept;
    void release(std::size_t octets) noexcept;

    std::size_t current() const noexcept { return current_; }
    std::size_t peak() const noexcept { return peak_; }
    void reset() noexcept { current_ = peak_ = 0; }

private:
    std::size_t current_ = 0;
    std::size_t peak_ = 0;
};

// RAII lease of `octets` on a meter; grow() extends a lease as a buffer fills.
class MeterLease {
public:
    MeterLease(BufferMeter* meter, std::size_t octets) noexcept : meter_(meter) { grow(octets); }
    ~MeterLease() {
        if (meter_) meter_->release(octets_);
    }
    MeterLease(const MeterLease&) = delete;
    MeterLease& operator=(const MeterLease&) = delete;

    void grow(std::size_t octets) noexcept {
        if (meter_) meter_->acquire(octets);
        octets_ += octets;
    }

private:
    BufferMeter* meter_;
    std::size_t octets_ = 0;
};

} // namespace ncsh
