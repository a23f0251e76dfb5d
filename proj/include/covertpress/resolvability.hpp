#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covertpress/dist.hpp"
#include "covertpress/prf.hpp"
#include "covertpress/rng.hpp"

namespace covertpress {

enum class BinDomain {
    PaperExact,  // ceil(2^{m R_Y}) bins
    PowerOfTwo   // 2^{ceil(m R_Y)} bins, for bit-string payloads
};

// Fixed keyed realization of the uniform random binning of Y^m sequences.
struct BinningSpec {
    int m = 0;
    int alphabet = 2;      // |Y|
    double rate_y = 0;     // R_Y = H(Y) - eps, must be in (0, log2|Y|)
    int bin_bits = 0;      // ceil(m R_Y); width of a serialized bin index
    uint64_t n_bins = 0;
    MapKey key;
};

BinningSpec make_binning_spec(int m, int alphabet, double rate_y, const MapKey& key,
                              BinDomain domain = BinDomain::PaperExact);

// Keyed-PRF bin assignment, constant per (spec, y); 1-based.
uint64_t bin_of(const BinningSpec& spec, std::span<const uint8_t> y);

// Exact enumeration tables; requires |Y|^m <= 2^24.
class BinTable {
public:
    BinTable(const BinningSpec& spec, const FiniteDist& p_y);

    const BinningSpec& spec() const { return spec_; }
    // Exact draw from p_{Y^m | B(Y^m) = b}; throws EmptyBin on an empty bin.
    std::vector<uint8_t> sample_given_bin(uint64_t b, Stream& rng) const;
    bool bin_empty(uint64_t b) const;
    uint64_t empty_bins() const;
    // V and D of the pushforward bin law against uniform.
    void uniformity(double& vdist, double& kl) const;
    // V(p_hat_{Y^m}, p_{Y^m}) where p_hat averages the conditionals under a
    // uniform bin; equals the bin-law distance pushed back.
    double synthesis_vdist() const;

    std::vector<uint8_t> sequence(uint64_t id) const;
    double seq_prob(uint64_t id) const;

private:
    BinningSpec spec_;
    FiniteDist p_y_;
    std::vector<uint32_t> members_;      // sequence ids grouped by bin
    std::vector<uint64_t> bin_offset_;   // n_bins + 1 offsets into members_
    std::vector<double> bin_mass_;
};

struct EmptyBin : std::runtime_error {
    explicit EmptyBin(uint64_t b)
        : std::runtime_error("empty bin " + std::to_string(b)), bin(b) {}
    uint64_t bin;
};

struct BinUniformity {
    double vdist = 0;
    double kl = 0;
};

BinUniformity binning_uniformity(const BinningSpec& spec, const FiniteDist& p_y);

}  // namespace covertpress
