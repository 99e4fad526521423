#include <functional>
#include <ostream>

#include "ncsh/cli/cli.hpp"
#include "ncsh/error.hpp"
#include "ncsh/ffmath/field.hpp"
#include "ncsh/ffmath/gf256.hpp"
#include "ncsh/handshake/session.hpp"
#include "ncsh/handshake/signature.hpp"
#include "ncsh/netio/messages.hpp"
#include "ncsh/primitives/aes.hpp"
#include "ncsh/primitives/des.hpp"
#include "ncsh/primitives/sha1.hpp"

namespace ncsh::cli {

namespace {

using ffmath::BigUint;

bool aes_vector() {
    const Bytes zero(16, 0);
    return to_hex(primitives::aes128_encrypt_block(zero, zero)) == "66e94bd4ef8a2c3b884cfa59ca342b2e";
}

bool des_vector() {
    return to_hex(primitives::des_encrypt_block(from_hex("0123456789abcdef"), to_bytes("Now is t"))) ==
           "3fa40e8a984d4815";
}

bool sha1_vectors() {
    return to_hex(primitives::sha1(to_bytes(""))) == "da39a3ee5e6b4b0d3255bfef95601890afd80709" &&
           to_hex(primitives::sha1(to_bytes("abc"))) == "a9993e364706816aba3e25717850c26c9cd0d89d";
}

bool field_checks() {
    if (!ffmath::field_exists(11) || !ffmath::field_exists(256) || ffmath::field_exists(12)) return false;
    for (int a = 1; a < 251; ++a) {
        if ((ffmath::mod_inv(BigUint(static_cast<std::uint64_t>(a)), BigUint(251)) * BigUint(static_cast<std::uint64_t>(a))) %
                BigUint(251) !=
            BigUint(1)) {
            return false;
        }
    }
    for (int a = 1; a < 256; ++a) {
        const auto x = ffmath::Gf256{static_cast<std::uint8_t>(a)};
        if (ffmath::gf256_mul(x, ffmath::gf256_inv(x)).value != 1) return false;
    }
    return true;
}

bool demo_chain() {
    const auto bob = primitives::rsa_keypair_from_primes(BigUint(5), BigUint(11));
    const auto alice = primitives::rsa_keypair_from_primes(BigUint(5), BigUint(17));
    const auto c = primitives::rsa_apply(bob.e, bob.n, BigUint(2));
    const auto m1 = handshake::sign_literal(alice, {c}, bob.n);
    const auto back = handshake::verify_literal(alice.public_key(), m1);
    return c == BigUint(8) && m1[0] == BigUint(2) && back[0] == BigUint(8) &&
           primitives::rsa_apply(bob.d, bob.n, back[0]) == BigUint(2) &&
           handshake::homomorphic_product_check(bob.public_key(), BigUint(2), BigUint(3));
}

bool seal_open() {
    SeededRandom rng(0x5e1f);
    const auto cc = primitives::rsa_keygen(512, rng);
    const auto st = primitives::rsa_keygen(512, rng);
    for (auto suite : {CipherSuite::AES, CipherSuite::DES, CipherSuite::RSA}) {
        const auto params = handshake::calibrate(SecurityLevel::L1, suite);
        auto a = handshake::make_session(handshake::Role::COMMAND_CENTRE, 1, cc, params);
        auto b = handshake::make_session(handshake::Role::SHOOTER_TARGET, 1, st, params);
        a.phase = b.phase = handshake::Phase::READY;
        a.peer_public = st.public_key();
        b.peer_public = cc.public_key();
        const Bytes pt = to_bytes("self test payload");
        auto env = handshake::seal(a, pt, rng);
        if (handshake::open(b, netio::decode_envelope(netio::encode_envelope(env))) != pt) return false;
        env.ciphertext[0] ^= 1;
        try {
            handshake::open(b, env);
            return false;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::signature_invalid) return false;
        }
    }
    return true;
}

bool frame_checks() {
    const netio::Frame f{netio::MsgType::DATA, 42, 0, 1, to_bytes("frame")};
    Bytes wire = netio::encode_frame(f);
    if (netio::decode_frame(wire) != f) return false;
    wire[wire.size() / 2] ^= 0x40;
    try {
        netio::decode_frame(wire);
        return false;
    } catch (const Error&) {
        return true;
    }
}

} // namespace

bool selftest(std::ostream& out) {
    const std::pair<const char*, std::function<bool()>> checks[] = {
        {"AES-128 reference vector", aes_vector},
        {"DES reference vector", des_vector},
        {"SHA-1 reference vectors", sha1_vectors},
        {"field existence and inverses", field_checks},
        {"demo sign-then-encrypt chain", demo_chain},
        {"seal/open and tamper rejection", seal_open},
        {"frame codec", frame_checks},
    };
    bool all = true;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception&) {
            ok = false;
        }
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        all = all && ok;
    }
    return all;
}

} // namespace ncsh::cli
