#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ncsh {

// Caller-owned source of random octets. Nothing in the library keeps a hidden
// generator; every randomized operation takes one of these explicitly.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    std::uint64_t next_u64();
    // Uniform in [0, bound). bound must be nonzero.
    std::uint64_t uniform(std::uint64_t bound);
    double unit();
};

// Deterministic generator for tests, simulations and benchmarks.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
    void fill(std::span<std::uint8_t> out) override;

private:
    std::mt19937_64 engine_;
};

// Operating-system entropy.
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;

private:
    std::random_device device_;
};

} // namespace ncsh
