#include "ncsh/ffmath/prime.hpp"

#include <array>
#include <vector>

#include "ncsh/error.hpp"
#include "ncsh/ffmath/field.hpp"

namespace ncsh::ffmath {

namespace {

constexpr std::uint64_t kTrialDivisionLimit = 2048;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionLimit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < kTrialDivisionLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < kTrialDivisionLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : small_primes()) {
        if (p * p > n) return true;
        if (n % p == 0) return n == p;
    }
    return true;
}

std::uint32_t small_residue(const BigUint& n, std::uint32_t p) {
    return static_cast<std::uint32_t>((n % BigUint(p)).to_u64());
}

bool miller_rabin(const BigUint& n, int rounds, RandomSource& rng) {
    const BigUint one(1);
    const BigUint n_minus_1 = n - one;
    std::size_t s = 0;
    while (!n_minus_1.test_bit(s)) ++s;
    const BigUint d = n_minus_1 >> s;
    const BigUint base_span = n - BigUint(3);  // bases drawn from [2, n-2]

    for (int round = 0; round < rounds; ++round) {
        BigUint a = BigUint::random_below(rng, base_span) + BigUint(2);
        BigUint x = mod_pow(a, d, n);
        if (x == one || x == n_minus_1) continue;
        bool witness = true;
        for (std::size_t i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace

bool is_probable_prime(const BigUint& n, int rounds, RandomSource& rng) {
    if (rounds < 1) {
        throw Error(ErrorCode::invalid_argument, "Miller-Rabin needs at least one round");
    }
    if (n < BigUint(kTrialDivisionLimit)) {
        return trial_division(n.to_u64());
    }
    for (std::uint32_t p : small_primes()) {
        if (small_residue(n, p) == 0) return false;
    }
    return miller_rabin(n, rounds, rng);
}

bool is_probable_prime(const BigUint& n, int rounds) {
    SystemRandom rng;
    return is_probable_prime(n, rounds, rng);
}

BigUint gen_prime(std::size_t bits, RandomSource& rng) {
    if (bits < 8) {
        throw Error(ErrorCode::invalid_argument, "prime size must be at least 8 bits");
    }
    const auto& primes = small_primes();
    std::vector<std::uint32_t> residues(primes.size());
    for (;;) {
        BigUint candidate = BigUint::random_bits(rng, bits - 1) + (BigUint(1) << (bits - 1));
        if (!candidate.is_odd()) candidate += BigUint(1);

        // Incremental sieve: step by 2 while tracking residues mod small primes.
        for (std::size_t i = 0; i < primes.size(); ++i) residues[i] = small_residue(candidate, primes[i]);
        for (std::uint32_t delta = 0; delta < 4096; delta += 2) {
            bool divisible = false;
            for (std::size_t i = 0; i < primes.size(); ++i) {
                if ((residues[i] + delta) % primes[i] == 0) {
                    divisible = true;
                    break;
                }
            }
            BigUint trial = candidate + BigUint(delta);
            if (trial.bit_length() != bits) break;
            if (divisible) {
                // small candidates may be a small prime themselves
                if (trial < BigUint(kTrialDivisionLimit) && trial_division(trial.to_u64())) return trial;
                continue;
            }
            if (is_probable_prime(trial, kKeygenPrimeRounds, rng)) return trial;
        }
    }
}

} // namespace ncsh::ffmath
