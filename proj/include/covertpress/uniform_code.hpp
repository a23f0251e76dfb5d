#pragma once

#include <optional>
#include <span>
#include <vector>

#include "covertpress/dist.hpp"
#include "covertpress/rng.hpp"
#include "covertpress/seeded_maps.hpp"

namespace covertpress {

enum class RateMode {
    KnownEntropy,    // R_n = H + eps_n, seed per the matched-exponent choice
    EntropyInterval  // R_n = H_u + eps_n, seed pays for the interval width
};

struct UniformCodeConfig {
    uint32_t n = 0;
    int alphabet = 2;
    double beta = 0.1;
    RateMode mode = RateMode::KnownEntropy;
    double h_low = 0;   // equals h_high in KnownEntropy mode
    double h_high = 0;
    double eps_n = 0;   // ceil(n^{1/2+beta}) / n
    double gamma_n = 0; // |X| log2(n+1)
    double rate = 0;    // R_n bits/symbol
    int bits_index = 0; // ceil(n R_n)
    int bits_type = 0;  // ceil(gamma)
    int seed_bits = 0;  // d_n, possibly overridden
    int seed_bits_formula = 0;  // d_n before any override
    MapKey key;

    int message_bits() const { return bits_index + bits_type; }
};

// eps_n = ceil(n^{1/2+beta}) / n, with the ceiling taken on the exact power.
double epsilon_n(uint32_t n, double beta);

UniformCodeConfig make_uniform_code(uint32_t n, int alphabet, double beta, RateMode mode,
                                    double h_or_hl, double h_u, const MapKey& key,
                                    std::optional<int> seed_bits_override = std::nullopt);

struct UcMessage {
    u128 index = 0;      // in [1, 2^bits_index]
    uint64_t type_code = 0;  // in [1, 2^bits_type]
};

UcMessage uc_encode(const UniformCodeConfig& cfg, u128 u, std::span<const uint8_t> x);

// Recovers x on the injective branch; the all-zero fallback elsewhere.
// nullopt signals a corrupted message (no type behind the type code, or an
// unused index on an injective type).
std::optional<std::vector<uint8_t>> uc_decode(const UniformCodeConfig& cfg, u128 u,
                                              const UcMessage& msg);

struct PeEstimate {
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
    uint64_t trials = 0;
    bool exact = false;
};

// Monte Carlo P_e over (X^n, U); the exact variant sums P[T] over the types
// whose class exceeds the index codomain (the fallback is never right
// except when it is bypassed, so the sum is exact for this decoder).
PeEstimate measure_pe(const UniformCodeConfig& cfg, const FiniteDist& px, uint64_t trials,
                      Stream& rng);
PeEstimate measure_pe_exact(const UniformCodeConfig& cfg, const FiniteDist& px);

struct UeResult {
    double vdist = 0;
    double kl = 0;
    bool exact = false;
    uint64_t samples = 0;
};

// Exact mode enumerates the full output law over (x, u); requires
// |X|^n * 2^{d_n} <= 2^24.
UeResult measure_ue_exact(const UniformCodeConfig& cfg, const FiniteDist& px);
// Monte Carlo alternative: empirical message law from `samples` draws.
UeResult measure_ue_mc(const UniformCodeConfig& cfg, const FiniteDist& px, uint64_t samples,
                       Stream& rng);

std::vector<uint8_t> sample_iid(const FiniteDist& p, uint32_t n, Stream& rng);

}  // namespace covertpress
