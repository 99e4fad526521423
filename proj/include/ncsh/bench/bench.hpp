#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ncsh/random.hpp"
#include "ncsh/types.hpp"

namespace ncsh::bench {

struct BenchConfig {
    std::vector<std::size_t> sizes = {10, 100, 500, 1000, 1500, 2000};
    std::vector<CipherSuite> suites = {CipherSuite::AES, CipherSuite::DES, CipherSuite::RSA};
    int trials = 10;
    SecurityLevel level = SecurityLevel::L1;
    bool include_keygen = false;
};

// Throws invalid-argument unless sizes and suites are non-empty, every size
// is at least 1 and trials is at least 3.
void validate(const BenchConfig& cfg);

// Times are medians over the trials, in microseconds. encrypt_us and
// peak_buffer_octets cover the payload-encryption stage of seal (session key,
// IV and cipher for AES/DES; blockwise RSA for the RSA suite). decrypt_us is
// the whole decrypt stage of open. keygen_us is zero unless keys are
// generated per trial.
struct BenchRecord {
    CipherSuite suite = CipherSuite::AES;
    std::size_t size = 0;
    std::uint64_t keygen_us = 0;
    std::uint64_t encrypt_us = 0;
    std::uint64_t decrypt_us = 0;
    std::uint64_t ciphertext_octets = 0;
    std::uint64_t peak_buffer_octets = 0;

    std::uint64_t total_us() const noexcept { return keygen_us + encrypt_us + decrypt_us; }
    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// One record per (suite, size), suite-major in configuration order.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg, RandomSource& rng);

inline constexpr const char* kCsvHeader = "suite,size,keygen_us,encrypt_us,decrypt_us,ciphertext_bytes,peak_buffer_bytes";

// Throws invalid-argument for an empty record list.
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
// Throws io-error when the file cannot be written.
void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);
std::vector<BenchRecord> parse_csv(std::istream& in);

// Same field names as the CSV header.
void write_json(const std::vector<BenchRecord>& records, std::ostream& out);
void write_json(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

struct SizeRanking {
    std::size_t size = 0;
    std::vector<CipherSuite> by_encrypt_time;  // fastest first
    std::vector<CipherSuite> by_peak_buffer;   // smallest first
    // Observed only when both AES and DES were measured.
    std::optional<CipherSuite> faster_of_aes_des;
    std::optional<CipherSuite> leaner_of_aes_des;
};

struct OrderingSummary {
    std::vector<SizeRanking> per_size;
    bool rsa_slowest_everywhere = false;
    bool rsa_largest_buffer_everywhere = false;
};

// Ranks suites per size; ties keep the order AES < DES < RSA. Requires at
// least two suites covering the same sizes (RSA among them for the RSA
// flags to be true), else invalid-argument.
OrderingSummary summarize(const std::vector<BenchRecord>& records);

void print_summary(const OrderingSummary& summary, std::ostream& out);

} // namespace ncsh::bench
