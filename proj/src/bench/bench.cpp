#include "ncsh/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ncsh/error.hpp"
#include "ncsh/handshake/session.hpp"

namespace ncsh::bench {

using handshake::Phase;
using handshake::RsaKeyPair;
using handshake::Role;
using Clock = std::chrono::steady_clock;

void validate(const BenchConfig& cfg) {
    if (cfg.sizes.empty() || cfg.suites.empty()) {
        throw Error(ErrorCode::invalid_argument, "bench needs at least one size and one suite");
    }
    if (std::any_of(cfg.sizes.begin(), cfg.sizes.end(), [](std::size_t s) { return s < 1; })) {
        throw Error(ErrorCode::invalid_argument, "bench sizes must be at least 1 octet");
    }
    if (cfg.trials < 3) {
        throw Error(ErrorCode::invalid_argument, "bench needs at least 3 trials");
    }
}

namespace {

std::uint64_t median_us(std::vector<std::chrono::nanoseconds> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    const auto mid = n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2;
    return static_cast<std::uint64_t>((mid.count() + 500) / 1000);
}

struct Peers {
    handshake::SessionState cc;
    handshake::SessionState st;
};

Peers connect(const RsaKeyPair& cc_keys, const RsaKeyPair& st_keys, const handshake::SuiteParams& params) {
    Peers p{handshake::make_session(Role::COMMAND_CENTRE, 1, cc_keys, params),
            handshake::make_session(Role::SHOOTER_TARGET, 1, st_keys, params)};
    p.cc.phase = Phase::READY;
    p.cc.peer_public = st_keys.public_key();
    p.st.phase = Phase::READY;
    p.st.peer_public = cc_keys.public_key();
    return p;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg, RandomSource& rng) {
    validate(cfg);
    const std::size_t bits = handshake::modulus_bits_for(cfg.level);
    std::optional<RsaKeyPair> fixed_cc;
    std::optional<RsaKeyPair> fixed_st;
    if (!cfg.include_keygen) {
        fixed_cc = primitives::rsa_keygen(bits, rng);
        fixed_st = primitives::rsa_keygen(bits, rng);
    }

    std::vector<BenchRecord> records;
    for (CipherSuite suite : cfg.suites) {
        const auto params = handshake::calibrate(cfg.level, suite);
        for (std::size_t size : cfg.sizes) {
            std::vector<std::chrono::nanoseconds> keygen, encrypt, decrypt;
            BenchRecord rec{suite, size};
            for (int t = 0; t < cfg.trials; ++t) {
                std::chrono::nanoseconds keygen_time{0};
                RsaKeyPair cc_keys, st_keys;
                if (cfg.include_keygen) {
                    const auto k0 = Clock::now();
                    cc_keys = primitives::rsa_keygen(bits, rng);
                    st_keys = primitives::rsa_keygen(bits, rng);
                    keygen_time = Clock::now() - k0;
                } else {
                    cc_keys = *fixed_cc;
                    st_keys = *fixed_st;
                }
                Peers peers = connect(cc_keys, st_keys, params);
                Bytes text(size);
                rng.fill(text);

                handshake::SealTrace seal_trace;
                const auto env = handshake::seal(peers.cc, text, rng, &seal_trace);
                handshake::OpenTrace open_trace;
                if (handshake::open(peers.st, env, &open_trace) != text) {
                    throw Error(ErrorCode::corrupt_ciphertext, "bench round trip mismatch");
                }
                if (cfg.include_keygen) keygen_time += seal_trace.session_key;
                keygen.push_back(keygen_time);
                // Without per-trial keys, the symmetric key and IV draw is
                // part of encrypting the payload.
                encrypt.push_back(seal_trace.encrypt + (cfg.include_keygen ? std::chrono::nanoseconds{0}
                                                                           : seal_trace.session_key));
                decrypt.push_back(open_trace.decrypt);
                rec.ciphertext_octets = std::max<std::uint64_t>(rec.ciphertext_octets, env.ciphertext.size());
                rec.peak_buffer_octets = std::max<std::uint64_t>(rec.peak_buffer_octets, seal_trace.payload_buffers.peak());
            }
            rec.keygen_us = median_us(keygen);
            rec.encrypt_us = median_us(encrypt);
            rec.decrypt_us = median_us(decrypt);
            records.push_back(rec);
        }
    }
    return records;
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    if (records.empty()) throw Error(ErrorCode::invalid_argument, "no records to write");
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << to_string(r.suite) << ',' << r.size << ',' << r.keygen_us << ',' << r.encrypt_us << ','
            << r.decrypt_us << ',' << r.ciphertext_octets << ',' << r.peak_buffer_octets << '\n';
    }
}

void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    write_csv(records, f);
    f.flush();
    if (!f) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw Error(ErrorCode::invalid_argument, "missing or unexpected CSV header");
    }
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 7) throw Error(ErrorCode::invalid_argument, "CSV row needs 7 fields: " + line);
        try {
            BenchRecord r;
            const auto suite = parse_suite(cells[0]);
            if (!suite) throw Error(ErrorCode::invalid_argument, "unknown suite in CSV: " + cells[0]);
            r.suite = *suite;
            r.size = std::stoull(cells[1]);
            r.keygen_us = std::stoull(cells[2]);
            r.encrypt_us = std::stoull(cells[3]);
            r.decrypt_us = std::stoull(cells[4]);
            r.ciphertext_octets = std::stoull(cells[5]);
            r.peak_buffer_octets = std::stoull(cells[6]);
            out.push_back(r);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::invalid_argument, "CSV row has a non-integer field: " + line);
        }
    }
    return out;
}

void write_json(const std::vector<BenchRecord>& records, std::ostream& out) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        rows.push_back({{"suite", std::string(to_string(r.suite))},
                        {"size", r.size},
                        {"keygen_us", r.keygen_us},
                        {"encrypt_us", r.encrypt_us},
                        {"decrypt_us", r.decrypt_us},
                        {"ciphertext_bytes", r.ciphertext_octets},
                        {"peak_buffer_bytes", r.peak_buffer_octets}});
    }
    out << rows.dump(2) << '\n';
}

void write_json(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    write_json(records, f);
    f.flush();
    if (!f) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

OrderingSummary summarize(const std::vector<BenchRecord>& records) {
    std::map<std::size_t, std::map<CipherSuite, const BenchRecord*>> grid;
    std::set<CipherSuite> suites;
    for (const auto& r : records) {
        grid[r.size][r.suite] = &r;
        suites.insert(r.suite);
    }
    if (suites.size() < 2) {
        throw Error(ErrorCode::invalid_argument, "summary needs at least two suites");
    }
    for (const auto& [size, row] : grid) {
        if (row.size() != suites.size()) {
            throw Error(ErrorCode::invalid_argument, "suites do not cover the same sizes (size " + std::to_string(size) + ")");
        }
    }

    OrderingSummary out;
    const bool has_rsa = suites.count(CipherSuite::RSA) != 0;
    out.rsa_slowest_everywhere = has_rsa;
    out.rsa_largest_buffer_everywhere = has_rsa;
    for (const auto& [size, row] : grid) {
        SizeRanking rank;
        rank.size = size;
        // std::map iterates suites in enum order, which is the tie-break order.
        for (const auto& [suite, rec] : row) {
            rank.by_encrypt_time.push_back(suite);
            rank.by_peak_buffer.push_back(suite);
        }
        std::stable_sort(rank.by_encrypt_time.begin(), rank.by_encrypt_time.end(),
                         [&](CipherSuite a, CipherSuite b) { return row.at(a)->encrypt_us < row.at(b)->encrypt_us; });
        std::stable_sort(rank.by_peak_buffer.begin(), rank.by_peak_buffer.end(), [&](CipherSuite a, CipherSuite b) {
            return row.at(a)->peak_buffer_octets < row.at(b)->peak_buffer_octets;
        });
        if (has_rsa) {
            const auto* rsa = row.at(CipherSuite::RSA);
            for (const auto& [suite, rec] : row) {
                if (suite == CipherSuite::RSA) continue;
                if (!(rsa->encrypt_us > rec->encrypt_us)) out.rsa_slowest_everywhere = false;
                if (!(rsa->peak_buffer_octets > rec->peak_buffer_octets)) out.rsa_largest_buffer_everywhere = false;
            }
        }
        if (row.count(CipherSuite::AES) && row.count(CipherSuite::DES)) {
            const auto* aes = row.at(CipherSuite::AES);
            const auto* des = row.at(CipherSuite::DES);
            rank.faster_of_aes_des = des->encrypt_us < aes->encrypt_us ? CipherSuite::DES : CipherSuite::AES;
            rank.leaner_of_aes_des =
                des->peak_buffer_octets < aes->peak_buffer_octets ? CipherSuite::DES : CipherSuite::AES;
        }
        out.per_size.push_back(std::move(rank));
    }
    return out;
}

void print_summary(const OrderingSummary& summary, std::ostream& out) {
    auto join = [](const std::vector<CipherSuite>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += " < ";
            s += to_string(v[i]);
        }
        return s;
    };
    for (const auto& r : summary.per_size) {
        out << "size " << r.size << ": time " << join(r.by_encrypt_time) << "; buffer " << join(r.by_peak_buffer);
        if (r.faster_of_aes_des) {
            out << "; faster of AES/DES: " << to_string(*r.faster_of_aes_des);
        }
        out << '\n';
    }
    out << "RSA slowest at every size: " << (summary.rsa_slowest_everywhere ? "yes" : "no") << '\n';
    out << "RSA largest buffer at every size: " << (summary.rsa_largest_buffer_everywhere ? "yes" : "no") << '\n';
}

} // namespace ncsh::bench
