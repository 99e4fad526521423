#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncsh/bytes.hpp"

namespace ncsh::netio {

inline constexpr std::size_t kDefaultMaxFragment = 1400;

struct Fragment {
    std::uint16_t index = 0;
    std::uint16_t count = 1;
    Bytes chunk;

    friend bool operator==(const Fragment&, const Fragment&) = default;
};

// Every chunk but the last is exactly max_fragment octets; an empty payload
// yields a single empty fragment.
std::vector<Fragment> fragment(ByteView payload, std::size_t max_fragment = kDefaultMaxFragment);

// Collects the fragments of one message in any arrival order. An identical
// repeat is ignored; a repeat with different content, or a fragment whose
// count disagrees with earlier ones, throws conflicting-duplicate.
class Reassembler {
public:
    // Returns the payload once the last missing fragment arrives.
    std::optional<Bytes> add(const Fragment& f);

    bool complete() const noexcept { return count_ != 0 && received_ == count_; }
    std::size_t received() const noexcept { return received_; }

private:
    std::uint16_t count_ = 0;
    std::size_t received_ = 0;
    std::vector<std::optional<Bytes>> slots_;
};

// Batch form. Throws missing-fragment when the set is incomplete.
Bytes reassemble(const std::vector<Fragment>& fragments);

} // namespace ncsh::netio
