#include "doctest.h"

#include <map>
#include <set>
#include <tuple>

#include "ncsh/error.hpp"
#include "ncsh/ffmath/field.hpp"
#include "ncsh/handshake/session.hpp"
#include "ncsh/handshake/signature.hpp"

using namespace ncsh;
using namespace ncsh::handshake;
using ffmath::BigUint;
using primitives::rsa_keypair_from_primes;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ncsh::Error");
    return ErrorCode::io_error;
}

Bytes random_bytes(RandomSource& rng, std::size_t n) {
    Bytes b(n);
    rng.fill(b);
    return b;
}

// Oracle: repeated multiplication, no windowing.
std::uint64_t naive_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    for (std::uint64_t i = 0; i < e; ++i) r = r * b % m;
    return r;
}

RsaKeyPair bob_demo() { return rsa_keypair_from_primes(BigUint(5), BigUint(11)); }
RsaKeyPair alice_demo() { return rsa_keypair_from_primes(BigUint(5), BigUint(17)); }

const RsaKeyPair& cached_key(std::size_t bits, int slot) {
    static std::map<std::pair<std::size_t, int>, RsaKeyPair> cache;
    auto it = cache.find({bits, slot});
    if (it == cache.end()) {
        SeededRandom rng(bits * 31 + static_cast<std::uint64_t>(slot));
        it = cache.emplace(std::pair{bits, slot}, primitives::rsa_keygen(bits, rng)).first;
    }
    return it->second;
}

// A connected pair of READY sessions.
struct Pair {
    SessionState cc;
    SessionState st;
};

Pair ready_pair(const RsaKeyPair& cc_keys, const RsaKeyPair& st_keys, SuiteParams params) {
    Pair p{make_session(Role::COMMAND_CENTRE, 7, cc_keys, params), make_session(Role::SHOOTER_TARGET, 7, st_keys, params)};
    p.cc.phase = Phase::READY;
    p.cc.peer_public = st_keys.public_key();
    p.st.phase = Phase::READY;
    p.st.peer_public = cc_keys.public_key();
    return p;
}

} // namespace

TEST_CASE("calibration table") {
    CHECK(calibrate(SecurityLevel::L1, CipherSuite::AES) == SuiteParams{CipherSuite::AES, 512, 16, SigMode::DIGEST});
    CHECK(calibrate(SecurityLevel::L3, CipherSuite::RSA) == SuiteParams{CipherSuite::RSA, 2048, 0, SigMode::DIGEST});
    CHECK(calibrate(SecurityLevel::L2, CipherSuite::DES) == SuiteParams{CipherSuite::DES, 1024, 8, SigMode::DIGEST});
    for (auto level : {SecurityLevel::L1, SecurityLevel::L2, SecurityLevel::L3}) {
        for (auto suite : {CipherSuite::AES, CipherSuite::DES, CipherSuite::RSA}) {
            CHECK(calibrate(level, suite) == calibrate(level, suite));
        }
    }
}

TEST_CASE("demo keys reproduce the sign-then-encrypt chain") {
    const RsaKeyPair bob = bob_demo();
    const RsaKeyPair alice = alice_demo();
    REQUIRE(bob.n == BigUint(55));
    REQUIRE(bob.e == BigUint(3));
    REQUIRE(bob.d == BigUint(27));
    REQUIRE(alice.n == BigUint(85));
    REQUIRE(alice.e == BigUint(3));
    REQUIRE(alice.d == BigUint(43));
    CHECK((3 * 27) % 40 == 1);
    CHECK((3 * 43) % 64 == 1);

    const std::uint64_t m = 2;
    const std::uint64_t eb = naive_pow(m, 3, 55);
    const std::uint64_t m1 = naive_pow(eb, 43, 85);
    const std::uint64_t ea = naive_pow(m1, 3, 85);
    const std::uint64_t db = naive_pow(ea, 27, 55);
    REQUIRE(std::vector<std::uint64_t>{eb, m1, ea, db} == std::vector<std::uint64_t>{8, 2, 8, 2});

    const auto c = primitives::rsa_apply(bob.e, bob.n, BigUint(m));
    CHECK(c == BigUint(eb));
    const auto sig = sign_literal(alice, {c}, bob.n);
    REQUIRE(sig.size() == 1);
    CHECK(sig[0] == BigUint(m1));
    const auto recovered = verify_literal(alice.public_key(), sig);
    CHECK(recovered[0] == BigUint(ea));
    CHECK(primitives::rsa_apply(bob.d, bob.n, recovered[0]) == BigUint(db));

    CHECK(sign_literal(alice, {}, bob.n).empty());
    CHECK(code_of([&] { sign_literal(bob, {c}, alice.n); }) == ErrorCode::incompatible_moduli);
    CHECK(code_of([&] { verify_literal(alice.public_key(), {BigUint(85)}); }) == ErrorCode::corrupt_signature);
}

TEST_CASE("literal signing inverts on random blocks") {
    const RsaKeyPair& small = cached_key(512, 0);
    const RsaKeyPair& big = cached_key(1024, 0);
    SeededRandom rng(11);
    std::vector<BigUint> blocks;
    for (int i = 0; i < 200; ++i) blocks.push_back(BigUint::random_below(rng, small.n));
    CHECK(verify_literal(big.public_key(), sign_literal(big, blocks, small.n)) == blocks);

    // End to end: E_B, sign with D_A, verify with E_A, decrypt with D_B.
    for (int i = 0; i < 10; ++i) {
        const Bytes msg = random_bytes(rng, rng.uniform(301));
        const auto ct = primitives::rsa_encrypt_blockwise(small.public_key(), msg);
        const auto back = verify_literal(big.public_key(), sign_literal(big, ct, small.n));
        CHECK(primitives::rsa_decrypt_blockwise(small.d, small.n, back) == msg);
    }

    // Tampering with a literal signature block breaks the blockwise framing.
    int rejected = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        const Bytes msg = random_bytes(rng, 40);
        const auto ct = primitives::rsa_encrypt_blockwise(small.public_key(), msg);
        auto sig = sign_literal(big, ct, small.n);
        const std::size_t bit = rng.uniform(big.n.bit_length() - 1);
        Bytes raw = sig[0].to_bytes_be(big.n.byte_length());
        raw[raw.size() - 1 - bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        sig[0] = BigUint::from_bytes_be(raw);
        try {
            const auto back = verify_literal(big.public_key(), sig);
            const Bytes out = primitives::rsa_decrypt_blockwise(small.d, small.n, back);
            if (out != msg) ++rejected;
        } catch (const Error&) {
            ++rejected;
        }
    }
    CHECK(rejected == trials);
}

TEST_CASE("digest signatures") {
    const RsaKeyPair& key = cached_key(512, 0);
    const RsaKeyPair& other = cached_key(512, 1);
    SeededRandom rng(12);
    for (int i = 0; i < 100; ++i) {
        const Bytes ct = random_bytes(rng, rng.uniform(501));
        const auto sig = sign_digest(key, ct);
        REQUIRE(sig.size() == 1);
        CHECK(verify_digest(key.public_key(), ct, sig));
        CHECK_FALSE(verify_digest(other.public_key(), ct, sig));
    }
    for (int i = 0; i < 1000; ++i) {
        Bytes ct = random_bytes(rng, 64);
        auto sig = sign_digest(key, ct);
        if (i % 2 == 0) {
            const std::size_t bit = rng.uniform(ct.size() * 8);
            ct[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        } else {
            Bytes raw = sig[0].to_bytes_be(key.n.byte_length());
            const std::size_t bit = rng.uniform(raw.size() * 8);
            raw[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            sig[0] = BigUint::from_bytes_be(raw);
        }
        CHECK_FALSE(verify_digest(key.public_key(), ct, sig));
    }
    CHECK_FALSE(verify_digest(key.public_key(), Bytes{}, {}));
    CHECK_FALSE(verify_digest(key.public_key(), Bytes{}, {BigUint(1), BigUint(1)}));
}

TEST_CASE("homomorphic product") {
    const RsaPublicKey demo{BigUint(3), BigUint(55)};
    CHECK(naive_pow(2, 3, 55) * naive_pow(3, 3, 55) % 55 == 51);
    CHECK(naive_pow(6, 3, 55) == 51);
    CHECK(homomorphic_product_check(demo, BigUint(2), BigUint(3)));
    CHECK(homomorphic_product_check(demo, BigUint(1), BigUint(54)));
    CHECK(code_of([&] { homomorphic_product_check(demo, BigUint(55), BigUint(1)); }) == ErrorCode::invalid_argument);

    const RsaPublicKey pub = cached_key(512, 0).public_key();
    SeededRandom rng(13);
    for (int i = 0; i < 100; ++i) {
        CHECK(homomorphic_product_check(pub, BigUint::random_below(rng, pub.n), BigUint::random_below(rng, pub.n)));
    }
}

TEST_CASE("seal and open round trip") {
    SeededRandom rng(14);
    for (std::size_t bits : {512u, 1024u}) {
        for (auto suite : {CipherSuite::AES, CipherSuite::DES, CipherSuite::RSA}) {
            Pair p = ready_pair(cached_key(bits, 0), cached_key(bits, 1),
                                calibrate(primitives::level_for_modulus_bits(bits), suite));
            const int n = bits == 512 ? 30 : 5;
            std::set<Bytes> seen;
            for (int i = 0; i < n; ++i) {
                const Bytes pt = random_bytes(rng, rng.uniform(601));
                const Envelope env = seal(p.cc, pt, rng);
                CHECK(env.sender_public == p.cc.own_keys.public_key());
                CHECK_FALSE(env.signature.empty());
                if (suite == CipherSuite::RSA) {
                    CHECK(env.iv.empty());
                    CHECK(env.wrapped_key.empty());
                } else {
                    CHECK(env.iv.size() == block_size(suite));
                    CHECK_FALSE(env.wrapped_key.empty());
                }
                CHECK(open(p.st, env) == pt);
                CHECK(open(p.st, env) == pt);
                seen.insert(env.ciphertext);
            }
            // Fresh keys and IVs make repeated seals of one plaintext differ.
            if (suite != CipherSuite::RSA) {
                std::set<Bytes> repeats;
                for (int i = 0; i < 20; ++i) repeats.insert(seal(p.cc, to_bytes("same"), rng).ciphertext);
                CHECK(repeats.size() == 20);
            }
        }
    }
}

TEST_CASE("literal mode seal") {
    SeededRandom rng(15);
    SuiteParams params = calibrate(SecurityLevel::L1, CipherSuite::RSA);
    params.sig_mode = SigMode::LITERAL;

    // Signer modulus larger than the recipient's: literal signatures are used.
    Pair p = ready_pair(cached_key(1024, 0), cached_key(512, 0), params);
    const Bytes pt = random_bytes(rng, 200);
    const Envelope env = seal(p.cc, pt, rng);
    CHECK(env.sig_mode == SigMode::LITERAL);
    CHECK(env.signature.size() == env.ciphertext.size() / cached_key(512, 0).n.byte_length());
    CHECK(open(p.st, env) == pt);

    // Reversed ordering falls back to digest mode.
    Pair q = ready_pair(cached_key(512, 0), cached_key(1024, 0), params);
    const Envelope fallback = seal(q.cc, pt, rng);
    CHECK(fallback.sig_mode == SigMode::DIGEST);
    CHECK(open(q.st, fallback) == pt);

    // Symmetric suites always sign a digest.
    params.suite = CipherSuite::AES;
    Pair r = ready_pair(cached_key(1024, 0), cached_key(512, 0), params);
    CHECK(seal(r.cc, pt, rng).sig_mode == SigMode::DIGEST);
}

TEST_CASE("verification happens before any decryption") {
    SeededRandom rng(16);
    for (auto suite : {CipherSuite::AES, CipherSuite::DES, CipherSuite::RSA}) {
        Pair p = ready_pair(cached_key(512, 0), cached_key(512, 1), calibrate(SecurityLevel::L1, suite));
        for (int i = 0; i < 100; ++i) {
            Envelope env = seal(p.cc, random_bytes(rng, 100), rng);
            if (i % 2 == 0) {
                const std::size_t bit = rng.uniform(env.ciphertext.size() * 8);
                env.ciphertext[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            } else {
                Bytes raw = env.signature[0].to_bytes_be(64);
                const std::size_t bit = rng.uniform(raw.size() * 8);
                raw[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
                env.signature[0] = BigUint::from_bytes_be(raw);
            }
            OpenTrace trace;
            CHECK(code_of([&] { open(p.st, env, &trace); }) == ErrorCode::signature_invalid);
            CHECK(trace.verify_attempts == 1);
            CHECK(trace.decrypt_stage_entries == 0);
        }
    }

    // A different sender key than the pinned one is rejected even when the
    // envelope is internally consistent.
    Pair p = ready_pair(cached_key(512, 0), cached_key(512, 1), calibrate(SecurityLevel::L1, CipherSuite::AES));
    Pair impostor = ready_pair(cached_key(512, 2), cached_key(512, 1), calibrate(SecurityLevel::L1, CipherSuite::AES));
    OpenTrace trace;
    const Envelope forged = seal(impostor.cc, to_bytes("fire"), rng);
    CHECK(code_of([&] { open(p.st, forged, &trace); }) == ErrorCode::signature_invalid);
    CHECK(trace.decrypt_stage_entries == 0);

    // A validly signed but undecryptable envelope is a ciphertext error.
    Envelope bad = seal(p.cc, to_bytes("x"), rng);
    bad.ciphertext.pop_back();
    bad.signature = sign_digest(p.cc.own_keys, signed_material(bad));
    OpenTrace trace2;
    CHECK(code_of([&] { open(p.st, bad, &trace2); }) == ErrorCode::corrupt_ciphertext);
    CHECK(trace2.decrypt_stage_entries == 1);
}

TEST_CASE("seal and open require an established session") {
    SeededRandom rng(17);
    SessionState cc = make_session(Role::COMMAND_CENTRE, 1, cached_key(512, 0), calibrate(SecurityLevel::L1, CipherSuite::AES));
    CHECK(code_of([&] { seal(cc, to_bytes("x"), rng); }) == ErrorCode::protocol_violation);
    CHECK(code_of([&] { open(cc, Envelope{}, nullptr); }) == ErrorCode::protocol_violation);
}

TEST_CASE("transition table") {
    const auto params = calibrate(SecurityLevel::L1, CipherSuite::AES);
    const RsaKeyPair& cck = cached_key(512, 0);
    const RsaKeyPair& stk = cached_key(512, 1);
    SessionState cc = make_session(Role::COMMAND_CENTRE, 1, cck, params);

    auto r = step(cc, event::Start{});
    CHECK(r.state.phase == Phase::AWAITING_KEY);
    REQUIRE(r.actions.size() == 1);
    CHECK(std::get<action::SendKeyRequest>(r.actions[0]).own == cck.public_key());

    // Timeouts retransmit until the retry budget is spent.
    SessionState s = r.state;
    for (int i = 0; i < kMaxRetries; ++i) {
        auto t = step(s, event::Timeout{});
        CHECK(t.state.phase == Phase::AWAITING_KEY);
        CHECK(std::holds_alternative<action::Retransmit>(t.actions.at(0)));
        s = t.state;
    }
    auto closed = step(s, event::Timeout{});
    CHECK(closed.state.phase == Phase::CLOSED);
    CHECK(std::get<action::ReportFailure>(closed.actions.at(0)).code == ErrorCode::delivery_failed);

    SessionState awaiting_ack = r.state;
    awaiting_ack.phase = Phase::AWAITING_ACK;
    awaiting_ack.peer_public = stk.public_key();
    awaiting_ack.retries = kMaxRetries;
    auto fail = step(awaiting_ack, event::Timeout{});
    CHECK(fail.state.phase == Phase::CLOSED);
    CHECK(std::holds_alternative<action::ReportFailure>(fail.actions.at(0)));

    // Undefined pairs are rejected.
    CHECK(code_of([&] { step(cc, event::Timeout{}); }) == ErrorCode::protocol_violation);
    CHECK(code_of([&] { step(cc, event::AckReceived{}); }) == ErrorCode::protocol_violation);
    SessionState st = make_session(Role::SHOOTER_TARGET, 1, stk, params);
    CHECK(code_of([&] { step(st, event::Start{}); }) == ErrorCode::protocol_violation);
    CHECK(step(st, event::Timeout{}).state.phase == Phase::IDLE);
}

TEST_CASE("happy path exchanges four message types in order") {
    SeededRandom rng(18);
    const auto params = calibrate(SecurityLevel::L1, CipherSuite::DES);
    SessionState cc = make_session(Role::COMMAND_CENTRE, 9, cached_key(512, 0), params);
    SessionState st = make_session(Role::SHOOTER_TARGET, 9, cached_key(512, 1), params);
    std::vector<std::string> wire;
    Bytes delivered;
    std::optional<TimeReport> recorded;

    // Route each outgoing action to the other machine, as a lossless link would.
    std::vector<std::pair<bool, ProtocolEvent>> queue;  // (to_cc, event)
    auto dispatch = [&](const std::vector<ProtocolAction>& actions) {
        for (const auto& a : actions) {
            if (auto* kr = std::get_if<action::SendKeyRequest>(&a)) {
                wire.push_back("KEY_REQUEST");
                queue.emplace_back(false, event::KeyRequestReceived{kr->own});
            } else if (auto* ks = std::get_if<action::SendKeyResponse>(&a)) {
                wire.push_back("KEY_RESPONSE");
                queue.emplace_back(true, event::KeyResponseReceived{ks->own});
            } else if (auto* d = std::get_if<action::SendData>(&a)) {
                wire.push_back("DATA");
                queue.emplace_back(false, event::DataReceived{d->envelope});
            } else if (auto* ack = std::get_if<action::SendAck>(&a)) {
                wire.push_back("ACK");
                queue.emplace_back(true, event::AckReceived{ack->report});
            } else if (std::holds_alternative<action::SendError>(a)) {
                wire.push_back("ERROR");
            } else if (auto* dp = std::get_if<action::DeliverPlaintext>(&a)) {
                delivered = dp->plaintext;
            } else if (auto* rec = std::get_if<action::RecordTimeReport>(&a)) {
                recorded = rec->report;
            }
        }
    };
    auto drain = [&] {
        while (!queue.empty()) {
            auto [to_cc, ev] = queue.front();
            queue.erase(queue.begin());
            auto& target = to_cc ? cc : st;
            auto res = step(target, ev);
            target = res.state;
            dispatch(res.actions);
        }
    };

    auto r = step(cc, event::Start{});
    cc = r.state;
    dispatch(r.actions);
    drain();
    REQUIRE(cc.phase == Phase::READY);
    REQUIRE(st.phase == Phase::READY);
    CHECK(cc.peer_public == st.own_keys.public_key());
    CHECK(st.peer_public == cc.own_keys.public_key());

    const Bytes msg = to_bytes("target acquired");
    auto send = step(cc, event::SendRequested{seal(cc, msg, rng)});
    cc = send.state;
    CHECK(cc.phase == Phase::AWAITING_ACK);
    dispatch(send.actions);
    drain();

    CHECK(wire == std::vector<std::string>{"KEY_REQUEST", "KEY_RESPONSE", "DATA", "ACK"});
    CHECK(delivered == msg);
    REQUIRE(recorded.has_value());
    CHECK(recorded->total_us >= recorded->verify_us);
    CHECK(cc.phase == Phase::READY);
    CHECK(cc.last_report == recorded);
}

namespace {

struct Alphabet {
    std::vector<ProtocolEvent> events;
    std::vector<std::string> names;
};

// Abstract key: everything step() branches on apart from key and envelope
// contents, which are drawn from a fixed alphabet.
using StateKey = std::tuple<int, int, bool, bool, int>;

StateKey key_of(const SessionState& s, const RsaKeyPair& other_a, const RsaKeyPair& other_b) {
    int peer = 0;
    if (s.peer_public == other_a.public_key()) peer = 1;
    else if (s.peer_public == other_b.public_key()) peer = 2;
    else if (s.peer_public) peer = 3;
    return {static_cast<int>(s.phase), s.retries, s.peer_public.has_value(), s.pending.has_value(), peer};
}

bool invariants_hold(const SessionState& s) {
    if (s.retries < 0 || s.retries > s.max_retries) return false;
    const bool needs_peer = s.phase == Phase::READY || s.phase == Phase::AWAITING_ACK;
    const bool forbids_peer = s.phase == Phase::IDLE || s.phase == Phase::AWAITING_KEY;
    if (needs_peer && !s.peer_public) return false;
    if (forbids_peer && s.peer_public) return false;
    if (s.role == Role::COMMAND_CENTRE && s.pending.has_value() != (s.phase == Phase::AWAITING_ACK)) return false;
    return true;
}

} // namespace

TEST_CASE("every short event sequence lands in a defined state") {
    SeededRandom rng(19);
    const auto params = calibrate(SecurityLevel::L1, CipherSuite::AES);
    const RsaKeyPair& cck = cached_key(512, 0);
    const RsaKeyPair& stk = cached_key(512, 1);
    const RsaKeyPair& stranger = cached_key(512, 2);

    Pair p = ready_pair(cck, stk, params);
    const Envelope good = seal(p.cc, to_bytes("payload"), rng);
    Envelope tampered = good;
    tampered.ciphertext[0] ^= 1;

    const std::vector<ProtocolEvent> alphabet = {
        event::Start{},
        event::KeyRequestReceived{cck.public_key()},
        event::KeyRequestReceived{stranger.public_key()},
        event::KeyResponseReceived{stk.public_key()},
        event::KeyResponseReceived{stranger.public_key()},
        event::SendRequested{good},
        event::DataReceived{good},
        event::DataReceived{tampered},
        event::AckReceived{TimeReport{1, 2, 3}},
        event::ErrorReceived{ErrorCode::signature_invalid},
        event::Timeout{},
    };
    constexpr int kDepth = 10;

    for (Role role : {Role::COMMAND_CENTRE, Role::SHOOTER_TARGET}) {
        CAPTURE(to_string(role));
        const RsaKeyPair& own = role == Role::COMMAND_CENTRE ? cck : stk;
        const RsaKeyPair& expected_peer = role == Role::COMMAND_CENTRE ? stk : cck;
        // memo[(state, depth)] = number of sequences of that length explored
        std::map<std::pair<StateKey, int>, std::uint64_t> memo;
        std::uint64_t violations = 0;
        bool all_defined = true;

        std::function<std::uint64_t(const SessionState&, int)> explore = [&](const SessionState& s, int depth) {
            if (depth == 0) return std::uint64_t{1};
            const auto k = std::pair{key_of(s, expected_peer, stranger), depth};
            if (auto it = memo.find(k); it != memo.end()) return it->second;
            std::uint64_t count = 0;
            for (const auto& ev : alphabet) {
                try {
                    auto r = step(s, ev);
                    if (!invariants_hold(r.state)) all_defined = false;
                    count += explore(r.state, depth - 1);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::protocol_violation) all_defined = false;
                    ++violations;
                    // The rejected event leaves the state as it was.
                    count += explore(s, depth - 1);
                }
            }
            memo.emplace(k, count);
            return count;
        };

        const SessionState start = make_session(role, 1, own, params);
        const std::uint64_t sequences = explore(start, kDepth);
        std::uint64_t expected = 1;
        for (int i = 0; i < kDepth; ++i) expected *= alphabet.size();
        CHECK(sequences == expected);
        CHECK(all_defined);
        CHECK(violations > 0);
    }
}
