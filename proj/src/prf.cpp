#include "covertpress/prf.hpp"

#include <stdexcept>

namespace covertpress {

namespace {

inline uint64_t rotl(uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

inline void sipround(uint64_t& v0, uint64_t& v1, uint64_t& v2, uint64_t& v3) {
    v0 += v1; v1 = rotl(v1, 13); v1 ^= v0; v0 = rotl(v0, 32);
    v2 += v3; v3 = rotl(v3, 16); v3 ^= v2;
    v0 += v3; v3 = rotl(v3, 21); v3 ^= v0;
    v2 += v1; v1 = rotl(v1, 17); v1 ^= v2; v2 = rotl(v2, 32);
}

inline uint64_t load_le64(const uint8_t* p) {
    uint64_t v;
    std::memcpy(&v, p, 8);
    return v;  // little-endian hosts only; fine for this artifact
}

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit in key");
}

}  // namespace

uint64_t siphash24(uint64_t k0, uint64_t k1, const uint8_t* data, size_t len) {
    uint64_t v0 = k0 ^ 0x736f6d6570736575ULL;
    uint64_t v1 = k1 ^ 0x646f72616e646f6dULL;
    uint64_t v2 = k0 ^ 0x6c7967656e657261ULL;
    uint64_t v3 = k1 ^ 0x7465646279746573ULL;

    size_t n_blocks = len / 8;
    for (size_t i = 0; i < n_blocks; ++i) {
        uint64_t m = load_le64(data + 8 * i);
        v3 ^= m;
        sipround(v0, v1, v2, v3);
        sipround(v0, v1, v2, v3);
        v0 ^= m;
    }
    uint64_t last = uint64_t(len & 0xff) << 56;
    const uint8_t* tail = data + 8 * n_blocks;
    switch (len & 7) {
        case 7: last |= uint64_t(tail[6]) << 48; [[fallthrough]];
        case 6: last |= uint64_t(tail[5]) << 40; [[fallthrough]];
        case 5: last |= uint64_t(tail[4]) << 32; [[fallthrough]];
        case 4: last |= uint64_t(tail[3]) << 24; [[fallthrough]];
        case 3: last |= uint64_t(tail[2]) << 16; [[fallthrough]];
        case 2: last |= uint64_t(tail[1]) << 8; [[fallthrough]];
        case 1: last |= uint64_t(tail[0]); break;
        case 0: break;
    }
    v3 ^= last;
    sipround(v0, v1, v2, v3);
    sipround(v0, v1, v2, v3);
    v0 ^= last;
    v2 ^= 0xff;
    sipround(v0, v1, v2, v3);
    sipround(v0, v1, v2, v3);
    sipround(v0, v1, v2, v3);
    sipround(v0, v1, v2, v3);
    return v0 ^ v1 ^ v2 ^ v3;
}

MapKey MapKey::from_hex(std::string_view hex, uint64_t code_id) {
    if (hex.size() != 64) throw std::invalid_argument("key must be 32 bytes (64 hex chars)");
    MapKey k;
    for (size_t i = 0; i < 32; ++i)
        k.master[i] = uint8_t(hex_val(hex[2 * i]) * 16 + hex_val(hex[2 * i + 1]));
    k.code_id = code_id;
    return k;
}

std::string MapKey::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (uint8_t b : master) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

SubKey derive_subkey(const MapKey& key, const TagBuffer& tag) {
    uint64_t a0 = load_le64(key.master.data());
    uint64_t a1 = load_le64(key.master.data() + 8);
    uint64_t a2 = load_le64(key.master.data() + 16);
    uint64_t a3 = load_le64(key.master.data() + 24);
    TagBuffer t;
    t.put_u64(key.code_id);
    t.put_bytes(tag.data(), tag.size());
    SubKey sk;
    sk.k0 = siphash24(a0, a1, t.data(), t.size());
    sk.k1 = siphash24(a2, a3, t.data(), t.size());
    return sk;
}

FeistelPrp::FeistelPrp(SubKey key, int bits) : key_(key), bits_(bits) {
    if (bits < 1 || bits > 120) throw std::invalid_argument("prp width out of range [1,120]");
    half_ = (bits + 1) / 2;
}

u128 FeistelPrp::round_trip(u128 v, bool fwd) const {
    const u128 half_mask = (u128(1) << half_) - 1;
    uint64_t left = uint64_t((v >> half_) & half_mask);
    uint64_t right = uint64_t(v & half_mask);
    for (int r = 0; r < 4; ++r) {
        int round = fwd ? r : 3 - r;
        TagBuffer t;
        t.put_u64(uint64_t(round));
        t.put_u64(fwd ? right : left);
        uint64_t f = key_.prf(t.data(), t.size()) & uint64_t(half_mask);
        if (fwd) {
            uint64_t nl = right;
            right = left ^ f;
            left = nl;
        } else {
            uint64_t nr = left;
            left = right ^ f;
            right = nr;
        }
    }
    return (u128(left) << half_) | u128(right);
}

u128 FeistelPrp::forward(u128 v) const {
    const u128 lim = u128(1) << bits_;
    do {
        v = round_trip(v, true);
    } while (v >= lim);
    return v;
}

u128 FeistelPrp::inverse(u128 v) const {
    const u128 lim = u128(1) << bits_;
    do {
        v = round_trip(v, false);
    } while (v >= lim);
    return v;
}

}  // namespace covertpress
