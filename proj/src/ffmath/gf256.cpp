#include "ncsh/ffmath/gf256.hpp"

#include "ncsh/error.hpp"

namespace ncsh::ffmath {

Gf256 gf256_inv(Gf256 a) {
    if (a.value == 0) {
        throw Error(ErrorCode::no_inverse, "zero has no inverse in GF(2^8)");
    }
    // The multiplicative group has order 255, so a^-1 = a^254.
    Gf256 result{1};
    Gf256 base = a;
    for (unsigned e = 254; e != 0; e >>= 1) {
        if (e & 1) result = gf256_mul(result, base);
        base = gf256_mul(base, base);
    }
    return result;
}

} // namespace ncsh::ffmath
