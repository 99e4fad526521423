#include "ncsh/netio/fragment.hpp"

#include "ncsh/error.hpp"

namespace ncsh::netio {

std::vector<Fragment> fragment(ByteView payload, std::size_t max_fragment) {
    if (max_fragment == 0) {
        throw Error(ErrorCode::invalid_argument, "max_fragment must be at least 1");
    }
    const std::size_t count = payload.empty() ? 1 : (payload.size() + max_fragment - 1) / max_fragment;
    if (count > 0xFFFF) {
        throw Error(ErrorCode::invalid_argument, "payload needs more than 65535 fragments");
    }
    std::vector<Fragment> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t begin = i * max_fragment;
        const std::size_t len = std::min(max_fragment, payload.size() - begin);
        const ByteView chunk = payload.subspan(begin, len);
        out.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(count), Bytes(chunk.begin(), chunk.end())});
    }
    return out;
}

std::optional<Bytes> Reassembler::add(const Fragment& f) {
    if (f.count == 0 || f.index >= f.count) {
        throw Error(ErrorCode::bad_fragment, "fragment index out of range");
    }
    if (count_ == 0) {
        count_ = f.count;
        slots_.assign(count_, std::nullopt);
    } else if (f.count != count_) {
        throw Error(ErrorCode::conflicting_duplicate, "fragment count changed mid-message");
    }
    auto& slot = slots_[f.index];
    if (slot) {
        if (*slot != f.chunk) {
            throw Error(ErrorCode::conflicting_duplicate, "fragment repeated with different content");
        }
        return std::nullopt;
    }
    slot = f.chunk;
    if (++received_ != count_) return std::nullopt;
    Bytes out;
    for (const auto& s : slots_) put_bytes(out, *s);
    return out;
}

Bytes reassemble(const std::vector<Fragment>& fragments) {
    Reassembler r;
    std::optional<Bytes> out;
    for (const auto& f : fragments) {
        if (auto done = r.add(f)) out = std::move(done);
    }
    if (!out) {
        throw Error(ErrorCode::missing_fragment, "fragment set is incomplete");
    }
    return *out;
}

} // namespace ncsh::netio
