#include "covertpress/resolvability.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace covertpress {

namespace {
constexpr uint64_t kEnumCap = uint64_t(1) << 24;

uint64_t pow_u64(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}
}  // namespace

BinningSpec make_binning_spec(int m, int alphabet, double rate_y, const MapKey& key,
                              BinDomain domain) {
    if (m < 1 || alphabet < 2) throw std::invalid_argument("make_binning_spec: bad m or |Y|");
    if (!(rate_y > 0 && rate_y < std::log2(double(alphabet))))
        throw std::invalid_argument("make_binning_spec: need 0 < R_Y < log2|Y|");
    BinningSpec s;
    s.m = m;
    s.alphabet = alphabet;
    s.rate_y = rate_y;
    s.bin_bits = int(std::ceil(double(m) * rate_y - 1e-9));
    if (s.bin_bits < 1) s.bin_bits = 1;
    if (s.bin_bits > 40) throw std::invalid_argument("make_binning_spec: bin space too large");
    s.n_bins = domain == BinDomain::PowerOfTwo
                   ? uint64_t(1) << s.bin_bits
                   : uint64_t(std::ceil(std::exp2(double(m) * rate_y) - 1e-9));
    s.key = key;
    return s;
}

uint64_t bin_of(const BinningSpec& spec, std::span<const uint8_t> y) {
    if (int(y.size()) != spec.m) throw std::invalid_argument("bin_of: wrong length");
    TagBuffer tag;
    tag.put_label("binning");
    SubKey sk = derive_subkey(spec.key, tag);
    uint64_t h = sk.prf(y);
    if ((spec.n_bins & (spec.n_bins - 1)) == 0) return (h & (spec.n_bins - 1)) + 1;
    // second word to keep the modulo bias negligible
    TagBuffer tag2;
    tag2.put_label("binning-hi");
    u128 wide = (u128(derive_subkey(spec.key, tag2).prf(y)) << 64) | u128(h);
    return uint64_t(wide % spec.n_bins) + 1;
}

BinTable::BinTable(const BinningSpec& spec, const FiniteDist& p_y) : spec_(spec), p_y_(p_y) {
    if (p_y.alphabet_size() != spec.alphabet)
        throw std::invalid_argument("BinTable: alphabet mismatch");
    const uint64_t total = pow_u64(uint64_t(spec.alphabet), spec.m);
    if (total > kEnumCap)
        throw std::invalid_argument("BinTable: |Y|^m beyond 2^24, refuse to enumerate");

    std::vector<double> log2p(size_t(spec.alphabet));
    for (int a = 0; a < spec.alphabet; ++a)
        log2p[size_t(a)] = p_y[a] > 0 ? std::log2(p_y[a]) : -1e30;

    std::vector<uint32_t> bin_of_seq(total);
    std::vector<uint64_t> counts(spec.n_bins, 0);
    bin_mass_.assign(spec.n_bins, 0.0);

    std::vector<uint8_t> y(size_t(spec.m), 0);
    double lp = double(spec.m) * log2p[0];
    for (uint64_t id = 0;; ++id) {
        uint64_t b = bin_of(spec_, y) - 1;
        bin_of_seq[id] = uint32_t(b);
        ++counts[b];
        bin_mass_[b] += std::exp2(lp);
        // odometer increment, maintaining the log-probability
        int pos = spec.m - 1;
        while (pos >= 0) {
            lp -= log2p[y[size_t(pos)]];
            if (++y[size_t(pos)] < spec.alphabet) {
                lp += log2p[y[size_t(pos)]];
                break;
            }
            y[size_t(pos)] = 0;
            lp += log2p[0];
            --pos;
        }
        if (pos < 0) break;
    }

    bin_offset_.resize(spec.n_bins + 1);
    bin_offset_[0] = 0;
    for (uint64_t b = 0; b < spec.n_bins; ++b) bin_offset_[b + 1] = bin_offset_[b] + counts[b];
    members_.resize(total);
    std::vector<uint64_t> cursor(bin_offset_.begin(), bin_offset_.end() - 1);
    for (uint64_t id = 0; id < total; ++id) members_[cursor[bin_of_seq[id]]++] = uint32_t(id);
}

std::vector<uint8_t> BinTable::sequence(uint64_t id) const {
    std::vector<uint8_t> y(size_t(spec_.m));
    for (int pos = spec_.m - 1; pos >= 0; --pos) {
        y[size_t(pos)] = uint8_t(id % uint64_t(spec_.alphabet));
        id /= uint64_t(spec_.alphabet);
    }
    return y;
}

bool BinTable::bin_empty(uint64_t b) const {
    return bin_offset_[b] == bin_offset_[b - 1];
}

uint64_t BinTable::empty_bins() const {
    uint64_t e = 0;
    for (uint64_t b = 1; b <= spec_.n_bins; ++b)
        if (bin_empty(b)) ++e;
    return e;
}

double BinTable::seq_prob(uint64_t id) const {
    double p = 1.0;
    for (int pos = 0; pos < spec_.m; ++pos) {
        p *= p_y_[int(id % uint64_t(spec_.alphabet))];
        id /= uint64_t(spec_.alphabet);
    }
    return p;
}

std::vector<uint8_t> BinTable::sample_given_bin(uint64_t b, Stream& rng) const {
    if (b < 1 || b > spec_.n_bins) throw std::out_of_range("sample_given_bin: bad bin");
    uint64_t lo = bin_offset_[b - 1], hi = bin_offset_[b];
    if (lo == hi) throw EmptyBin(b);
    double mass = bin_mass_[b - 1];
    double v = rng.next_double() * mass;
    double acc = 0;
    for (uint64_t k = lo; k < hi; ++k) {
        acc += seq_prob(members_[k]);
        if (v < acc || k == hi - 1) return sequence(members_[k]);
    }
    return sequence(members_[hi - 1]);
}

void BinTable::uniformity(double& vdist, double& kl) const {
    const double u0 = 1.0 / double(spec_.n_bins);
    vdist = 0;
    kl = 0;
    for (double mass : bin_mass_) {
        vdist += std::abs(mass - u0);
        if (mass > 0) kl += mass * std::log2(mass / u0);
    }
    kl = std::max(kl, 0.0);
}

double BinTable::synthesis_vdist() const {
    // p_hat(y) = p(y) * (1/n_bins) / mass(bin(y)); summing |p_hat - p| per
    // bin gives sum_b |u0 - mass_b|, so compute it that way but keep the
    // skipped empty-bin mass explicit.
    const double u0 = 1.0 / double(spec_.n_bins);
    double v = 0;
    for (double mass : bin_mass_) {
        if (mass > 0)
            v += std::abs(u0 - mass);
        else
            v += u0;  // synthesized mass that cannot be placed anywhere
    }
    return v;
}

BinUniformity binning_uniformity(const BinningSpec& spec, const FiniteDist& p_y) {
    BinTable table(spec, p_y);
    BinUniformity r;
    table.uniformity(r.vdist, r.kl);
    return r;
}

}  // namespace covertpress
