#include "covertpress/rng.hpp"

#include <stdexcept>

namespace covertpress {

uint64_t Stream::next_u64() {
    uint8_t buf[8];
    uint64_t c = ctr_++;
    for (int i = 0; i < 8; ++i) buf[i] = uint8_t(c >> (8 * i));
    return siphash24(k0_, k1_, buf, 8);
}

double Stream::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Stream::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= lim);
    return v % n;
}

u128 Stream::bits(int nbits) {
    if (nbits < 0 || nbits > 128) throw std::invalid_argument("bits() width out of range");
    if (nbits == 0) return 0;
    u128 v = u128(next_u64());
    if (nbits > 64) v |= u128(next_u64()) << 64;
    if (nbits == 128) return v;
    return v & ((u128(1) << nbits) - 1);
}

std::vector<uint8_t> Stream::bit_vector(size_t nbits) {
    std::vector<uint8_t> out(nbits);
    for (size_t i = 0; i < nbits; ++i) out[i] = uint8_t(next_u64() & 1);
    return out;
}

MapKey Stream::map_key(uint64_t code_id) {
    MapKey k;
    for (int w = 0; w < 4; ++w) {
        uint64_t v = next_u64();
        for (int i = 0; i < 8; ++i) k.master[8 * w + i] = uint8_t(v >> (8 * i));
    }
    k.code_id = code_id;
    return k;
}

Stream derive_stream(uint64_t master_seed, std::string_view label, uint64_t index) {
    TagBuffer t;
    t.put_u64(master_seed);
    t.put_u64(index);
    t.put_label(label);
    uint64_t k0 = siphash24(0x8f14e45fceea167aULL, 0x2b7e151628aed2a6ULL, t.data(), t.size());
    uint64_t k1 = siphash24(0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL, t.data(), t.size());
    return Stream(k0, k1);
}

}  // namespace covertpress
