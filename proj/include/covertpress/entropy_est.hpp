#pragma once

#include <optional>
#include <span>
#include <vector>

#include "covertpress/uniform_code.hpp"

namespace covertpress {

// Interval partition of [0, log2|X|]: q = ceil(n^t) cells of width
// log2|X|/n^t, with padded endpoints a_{-1} = a_0 and a_{q+1} = a_q.
struct Partition {
    uint32_t n = 0;
    double t = 0.25;
    int q = 0;
    double delta = 0;
    double top = 0;  // log2|X|, or 1 for parameter-space partitions

    // a_i for i in [-1, q+1]
    double point(int i) const;
};

Partition make_partition(uint32_t n, double t, double top);

// Smallest index in [1, q] whose cell [a_{i-1}, a_i] contains h.
int select_interval(double h, const Partition& part);

// Plug-in estimate: entropy of the empirical distribution.
double plugin_entropy(std::span<const uint8_t> x, int alphabet_size);

// q interval codes; entry i covers (H_l, H_u) = (a_{i-2}, a_{i+1}).
struct CodeBank {
    Partition part;
    int alphabet = 2;
    double beta = 0.1;
    int index_bits = 0;  // ceil(log2 q), appended to every message
    std::vector<UniformCodeConfig> entries;

    const UniformCodeConfig& entry(int i) const { return entries.at(size_t(i - 1)); }
    int max_seed_bits() const;
    // payload plus the explicit code-index tail
    int message_bits(int i) const { return entry(i).message_bits() + index_bits; }
};

CodeBank make_code_bank(uint32_t n, int alphabet, double t, double beta, const MapKey& bank_key);

struct AdaptiveMessage {
    std::vector<uint8_t> bits;  // index bits, type bits, then code-index tail
    int code_index = 0;         // I_0 in [1, q]
};

AdaptiveMessage adaptive_encode(const CodeBank& bank, u128 u, std::span<const uint8_t> x);
std::optional<std::vector<uint8_t>> adaptive_decode(const CodeBank& bank, u128 u,
                                                    std::span<const uint8_t> bits);

struct EstimatorMoments {
    double bias = 0;      // E[plugin] - H(p)
    double variance = 0;
    uint64_t trials = 0;
};

EstimatorMoments estimator_moments(const FiniteDist& px, uint32_t n, uint64_t trials,
                                   Stream& rng);

// bit-vector <-> integer helpers shared by the adaptive and covert layers;
// big-endian (bits[0] is the most significant)
std::vector<uint8_t> to_bits(u128 value, int width);
u128 from_bits(std::span<const uint8_t> bits);

}  // namespace covertpress
