#pragma once

#include <cstddef>

#include "ncsh/ffmath/biguint.hpp"
#include "ncsh/random.hpp"

namespace ncsh::ffmath {

inline constexpr int kKeygenPrimeRounds = 40;

// Deterministic trial division below 2048; Miller-Rabin with `rounds` random
// bases above it (false-positive rate below 4^-rounds).
bool is_probable_prime(const BigUint& n, int rounds, RandomSource& rng);
// Same, drawing bases from operating-system entropy.
bool is_probable_prime(const BigUint& n, int rounds);

// Random prime with exactly `bits` bits (top bit set). Requires bits >= 8.
BigUint gen_prime(std::size_t bits, RandomSource& rng);

} // namespace ncsh::ffmath
