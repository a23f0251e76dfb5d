#include "covertpress/entropy_est.hpp"

#include <cmath>
#include <stdexcept>

namespace covertpress {

double Partition::point(int i) const {
    if (i < -1 || i > q + 1) throw std::out_of_range("Partition::point");
    if (i <= 0) return 0.0;
    if (i >= q) return top;
    return double(i) * delta;
}

Partition make_partition(uint32_t n, double t, double top) {
    if (!(t > 0 && t < 0.5)) throw std::invalid_argument("make_partition: t must be in (0, 1/2)");
    if (!(top > 0)) throw std::invalid_argument("make_partition: top must be positive");
    Partition p;
    p.n = n;
    p.t = t;
    p.top = top;
    double nt = std::pow(double(n), t);
    p.q = int(std::ceil(nt - 1e-9));
    p.delta = top / nt;
    return p;
}

int select_interval(double h, const Partition& part) {
    if (h < -1e-12 || h > part.top + 1e-12)
        throw std::invalid_argument("select_interval: value outside [0, top]");
    for (int i = 1; i <= part.q; ++i)
        if (h <= part.point(i)) return i;
    return part.q;
}

double plugin_entropy(std::span<const uint8_t> x, int alphabet_size) {
    return entropy(type_of(x, alphabet_size).empirical());
}

int CodeBank::max_seed_bits() const {
    int m = 0;
    for (const auto& e : entries) m = std::max(m, e.seed_bits);
    return m;
}

CodeBank make_code_bank(uint32_t n, int alphabet, double t, double beta,
                        const MapKey& bank_key) {
    CodeBank bank;
    bank.part = make_partition(n, t, std::log2(double(alphabet)));
    bank.alphabet = alphabet;
    bank.beta = beta;
    bank.index_bits = bank.part.q > 1 ? int(std::ceil(std::log2(double(bank.part.q)))) : 1;
    bank.entries.reserve(size_t(bank.part.q));
    for (int i = 1; i <= bank.part.q; ++i) {
        MapKey key = bank_key;
        key.code_id = bank_key.code_id * 1000003 + uint64_t(i);
        double h_l = bank.part.point(i - 2);
        double h_u = bank.part.point(i + 1);
        bank.entries.push_back(make_uniform_code(n, alphabet, beta, RateMode::EntropyInterval,
                                                 h_l, h_u, key));
    }
    return bank;
}

std::vector<uint8_t> to_bits(u128 value, int width) {
    std::vector<uint8_t> bits(size_t(width));
    for (int i = 0; i < width; ++i)
        bits[size_t(i)] = uint8_t((value >> (width - 1 - i)) & 1);
    return bits;
}

u128 from_bits(std::span<const uint8_t> bits) {
    u128 v = 0;
    for (uint8_t b : bits) v = (v << 1) | u128(b & 1);
    return v;
}

AdaptiveMessage adaptive_encode(const CodeBank& bank, u128 u, std::span<const uint8_t> x) {
    if (x.size() != bank.part.n) throw std::invalid_argument("adaptive_encode: wrong length");
    const int i0 = select_interval(plugin_entropy(x, bank.alphabet), bank.part);
    const UniformCodeConfig& cfg = bank.entry(i0);
    UcMessage m = uc_encode(cfg, u, x);

    AdaptiveMessage out;
    out.code_index = i0;
    out.bits = to_bits(m.index - 1, cfg.bits_index);
    auto tb = to_bits(u128(m.type_code - 1), cfg.bits_type);
    out.bits.insert(out.bits.end(), tb.begin(), tb.end());
    auto ib = to_bits(u128(i0 - 1), bank.index_bits);
    out.bits.insert(out.bits.end(), ib.begin(), ib.end());
    return out;
}

std::optional<std::vector<uint8_t>> adaptive_decode(const CodeBank& bank, u128 u,
                                                    std::span<const uint8_t> bits) {
    if (int(bits.size()) < bank.index_bits) return std::nullopt;
    const int i0 = int(from_bits(bits.subspan(bits.size() - size_t(bank.index_bits)))) + 1;
    if (i0 < 1 || i0 > bank.part.q) return std::nullopt;
    const UniformCodeConfig& cfg = bank.entry(i0);
    if (int(bits.size()) != bank.message_bits(i0)) return std::nullopt;
    UcMessage m;
    m.index = from_bits(bits.first(size_t(cfg.bits_index))) + 1;
    m.type_code =
        uint64_t(from_bits(bits.subspan(size_t(cfg.bits_index), size_t(cfg.bits_type)))) + 1;
    return uc_decode(cfg, u, m);
}

EstimatorMoments estimator_moments(const FiniteDist& px, uint32_t n, uint64_t trials,
                                   Stream& rng) {
    if (trials < 100) throw std::invalid_argument("estimator_moments: trials < 100");
    double sum = 0, sum_sq = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        auto x = sample_iid(px, n, rng);
        double h = plugin_entropy(x, px.alphabet_size());
        sum += h;
        sum_sq += h * h;
    }
    double mean = sum / double(trials);
    EstimatorMoments m;
    m.bias = mean - entropy(px);
    m.variance = std::max(0.0, sum_sq / double(trials) - mean * mean);
    m.trials = trials;
    return m;
}

}  // namespace covertpress
