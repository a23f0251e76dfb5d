#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

namespace covertpress {

using u128 = unsigned __int128;

// SipHash-2-4, used as the keyed PRF throughout. Determinism and key
// sensitivity are the contract; bit-exact portability across
// implementations is not.
uint64_t siphash24(uint64_t k0, uint64_t k1, const uint8_t* data, size_t len);

inline uint64_t siphash24(uint64_t k0, uint64_t k1, std::span<const uint8_t> data) {
    return siphash24(k0, k1, data.data(), data.size());
}

// 256-bit master key plus an integer tag; distinct code_ids give
// statistically independent map families.
struct MapKey {
    std::array<uint8_t, 32> master{};
    uint64_t code_id = 0;

    static MapKey from_hex(std::string_view hex, uint64_t code_id = 0);
    std::string to_hex() const;
};

// 128-bit PRF subkey derived from a MapKey and a domain-separation tag.
struct SubKey {
    uint64_t k0 = 0;
    uint64_t k1 = 0;

    uint64_t prf(const uint8_t* data, size_t len) const { return siphash24(k0, k1, data, len); }
    uint64_t prf(std::span<const uint8_t> data) const { return prf(data.data(), data.size()); }
};

// Small append-only byte buffer for building PRF inputs.
class TagBuffer {
public:
    void put_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_[len_++] = uint8_t(v >> (8 * i));
    }
    void put_u128(u128 v) {
        put_u64(uint64_t(v));
        put_u64(uint64_t(v >> 64));
    }
    void put_bytes(const uint8_t* p, size_t n) {
        std::memcpy(buf_ + len_, p, n);
        len_ += n;
    }
    void put_label(std::string_view s) {
        put_bytes(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }
    const uint8_t* data() const { return buf_; }
    size_t size() const { return len_; }

private:
    uint8_t buf_[192];
    size_t len_ = 0;
};

SubKey derive_subkey(const MapKey& key, const TagBuffer& tag);

// Keyed pseudorandom permutation of [0, 2^bits) realized as a 4-round
// Feistel network over the enclosing square domain with cycle walking.
// bits must be in [1, 120].
class FeistelPrp {
public:
    FeistelPrp(SubKey key, int bits);

    u128 forward(u128 v) const;
    u128 inverse(u128 v) const;
    int bits() const { return bits_; }

private:
    u128 round_trip(u128 v, bool fwd) const;
    SubKey key_;
    int bits_;
    int half_;  // bits per Feistel half; domain walked is 2^(2*half_)
};

}  // namespace covertpress
