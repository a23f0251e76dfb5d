#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "covertpress/prf.hpp"

namespace covertpress {

// Counter-based stream: output block i is a PRF of (key, i), so draws are
// reproducible regardless of thread schedule. Streams derived from the same
// (master_seed, label, index) are identical; distinct triples give
// statistically independent streams.
class Stream {
public:
    Stream() = default;
    Stream(uint64_t k0, uint64_t k1) : k0_(k0), k1_(k1) {}

    uint64_t next_u64();
    // 53-bit mantissa double in [0, 1)
    double next_double();
    // unbiased integer in [0, n)
    uint64_t below(uint64_t n);
    // nbits uniform bits, nbits <= 128
    u128 bits(int nbits);
    std::vector<uint8_t> bit_vector(size_t nbits);
    MapKey map_key(uint64_t code_id = 0);

private:
    uint64_t k0_ = 0x9e3779b97f4a7c15ULL;
    uint64_t k1_ = 0xbf58476d1ce4e5b9ULL;
    uint64_t ctr_ = 0;
};

Stream derive_stream(uint64_t master_seed, std::string_view label, uint64_t index = 0);

}  // namespace covertpress
