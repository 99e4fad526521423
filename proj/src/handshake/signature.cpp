#include "ncsh/handshake/signature.hpp"

#include "ncsh/error.hpp"
#include "ncsh/primitives/sha1.hpp"

namespace ncsh::handshake {

using primitives::rsa_apply;

namespace {

// The digest as an integer. Moduli of 512 bits and up exceed 2^160, so the
// reduction only matters for tiny demo keys.
BigUint digest_value(ByteView data, const BigUint& n) {
    const auto digest = primitives::sha1(data);
    return BigUint::from_bytes_be(digest) % n;
}

} // namespace

std::vector<BigUint> sign_literal(const RsaKeyPair& signer, const std::vector<BigUint>& ct_blocks,
                                  const BigUint& recipient_n) {
    if (signer.n <= recipient_n) {
        throw Error(ErrorCode::incompatible_moduli, "signer modulus must exceed the recipient modulus");
    }
    std::vector<BigUint> out;
    out.reserve(ct_blocks.size());
    for (const BigUint& c : ct_blocks) out.push_back(rsa_apply(signer.d, signer.n, c));
    return out;
}

std::vector<BigUint> verify_literal(const RsaPublicKey& signer_public, const std::vector<BigUint>& m1_blocks) {
    std::vector<BigUint> out;
    out.reserve(m1_blocks.size());
    for (const BigUint& block : m1_blocks) {
        if (block >= signer_public.n) {
            throw Error(ErrorCode::corrupt_signature, "signature block exceeds signer modulus");
        }
        out.push_back(rsa_apply(signer_public.e, signer_public.n, block));
    }
    return out;
}

std::vector<BigUint> sign_digest(const RsaKeyPair& signer, ByteView data) {
    return {rsa_apply(signer.d, signer.n, digest_value(data, signer.n))};
}

bool verify_digest(const RsaPublicKey& signer_public, ByteView data, const std::vector<BigUint>& signature) {
    if (signature.size() != 1 || signature[0] >= signer_public.n || signer_public.n < BigUint(2)) return false;
    return rsa_apply(signer_public.e, signer_public.n, signature[0]) == digest_value(data, signer_public.n);
}

bool homomorphic_product_check(const RsaPublicKey& pub, const BigUint& x, const BigUint& y) {
    if (x >= pub.n || y >= pub.n) {
        throw Error(ErrorCode::invalid_argument, "operands must be below the modulus");
    }
    const BigUint lhs = (rsa_apply(pub.e, pub.n, x) * rsa_apply(pub.e, pub.n, y)) % pub.n;
    return lhs == rsa_apply(pub.e, pub.n, (x * y) % pub.n);
}

} // namespace ncsh::handshake
