#include "ncsh/primitives/cbc.hpp"

#include <variant>

#include "ncsh/error.hpp"
#include "ncsh/primitives/aes.hpp"
#include "ncsh/primitives/des.hpp"

namespace ncsh::primitives {

namespace {

using AnyCipher = std::variant<Aes128, Des>;

void check_key(CipherSuite suite, const SymmetricKey& key) {
    if (suite == CipherSuite::RSA) {
        throw Error(ErrorCode::invalid_argument, "CBC mode needs a symmetric suite");
    }
    if (key.suite != suite || key.bytes.size() != (suite == CipherSuite::AES ? 16u : 8u)) {
        throw Error(ErrorCode::invalid_argument, "key does not match cipher suite");
    }
}

AnyCipher make_cipher(CipherSuite suite, const SymmetricKey& key) {
    if (suite == CipherSuite::AES) return Aes128(key.bytes);
    return Des(key.bytes);
}

} // namespace

SymmetricKey generate_symmetric_key(CipherSuite suite, RandomSource& rng) {
    if (suite == CipherSuite::RSA) {
        throw Error(ErrorCode::invalid_argument, "RSA suite has no symmetric key");
    }
    SymmetricKey key{Bytes(suite == CipherSuite::AES ? 16 : 8), suite};
    rng.fill(key.bytes);
    return key;
}

Bytes cbc_seal(CipherSuite suite, const SymmetricKey& key, ByteView iv, ByteView plaintext, BufferMeter* meter) {
    check_key(suite, key);
    const std::size_t bs = block_size(suite);
    if (iv.size() != bs) {
        throw Error(ErrorCode::invalid_argument, "IV length must equal the block size");
    }
    const std::size_t pad = bs - plaintext.size() % bs;
    const std::size_t total = plaintext.size() + pad;
    MeterLease lease(meter, total);

    // Encrypted in place over the padded copy.
    Bytes out(plaintext.begin(), plaintext.end());
    out.resize(total, static_cast<std::uint8_t>(pad));

    const AnyCipher cipher = make_cipher(suite, key);
    const std::uint8_t* chain = iv.data();
    for (std::size_t off = 0; off < total; off += bs) {
        std::uint8_t* block = out.data() + off;
        for (std::size_t i = 0; i < bs; ++i) block[i] ^= chain[i];
        std::visit([block](const auto& c) { c.encrypt_block(block, block); }, cipher);
        chain = block;
    }
    return out;
}

Bytes cbc_open(CipherSuite suite, const SymmetricKey& key, ByteView iv, ByteView ciphertext) {
    check_key(suite, key);
    const std::size_t bs = block_size(suite);
    if (iv.size() != bs) {
        throw Error(ErrorCode::invalid_argument, "IV length must equal the block size");
    }
    const Error corrupt(ErrorCode::corrupt_ciphertext, "ciphertext failed to decrypt");
    if (ciphertext.empty() || ciphertext.size() % bs != 0) throw corrupt;

    const AnyCipher cipher = make_cipher(suite, key);
    Bytes out(ciphertext.size());
    const std::uint8_t* chain = iv.data();
    for (std::size_t off = 0; off < ciphertext.size(); off += bs) {
        std::uint8_t* block = out.data() + off;
        std::visit([&](const auto& c) { c.decrypt_block(ciphertext.data() + off, block); }, cipher);
        for (std::size_t i = 0; i < bs; ++i) block[i] ^= chain[i];
        chain = ciphertext.data() + off;
    }

    const std::uint8_t pad = out.back();
    if (pad == 0 || pad > bs) throw corrupt;
    for (std::size_t i = out.size() - pad; i < out.size(); ++i) {
        if (out[i] != pad) throw corrupt;
    }
    out.resize(out.size() - pad);
    return out;
}

} // namespace ncsh::primitives
