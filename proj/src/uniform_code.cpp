#include "covertpress/uniform_code.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "covertpress/parallel.hpp"

namespace covertpress {

namespace {

// ceil with a guard against representation noise on exactly-integer values
int64_t ceil_guarded(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return int64_t(r);
    return int64_t(std::ceil(x));
}

struct TypeInfo {
    TypeClassDesc desc;
    double prob = 0;       // P[T_t] under px
    uint64_t size = 0;     // |T_t|
    bool injective = false;
};

std::vector<TypeInfo> type_table(const UniformCodeConfig& cfg, const FiniteDist& px) {
    auto types = enumerate_types(cfg.n, cfg.alphabet);
    std::vector<TypeInfo> out;
    out.reserve(types.size());
    for (auto& t : types) {
        TypeInfo ti;
        ti.desc = t;
        double log2p = 0;
        bool zero = false;
        for (int a = 0; a < cfg.alphabet; ++a) {
            if (t.counts[size_t(a)] == 0) continue;
            if (px[a] == 0) { zero = true; break; }
            log2p += double(t.counts[size_t(a)]) * std::log2(px[a]);
        }
        BigInt size = type_class_size(t);
        ti.size = size.convert_to<uint64_t>();
        ti.prob = zero ? 0.0 : size.convert_to<double>() * std::exp2(log2p);
        ti.injective = phi1_injective(t, cfg.bits_index);
        out.push_back(std::move(ti));
    }
    return out;
}

}  // namespace

double epsilon_n(uint32_t n, double beta) {
    return double(ceil_guarded(std::pow(double(n), 0.5 + beta))) / double(n);
}

UniformCodeConfig make_uniform_code(uint32_t n, int alphabet, double beta, RateMode mode,
                                    double h_or_hl, double h_u, const MapKey& key,
                                    std::optional<int> seed_bits_override) {
    if (n < 1 || alphabet < 2) throw std::invalid_argument("make_uniform_code: bad n or alphabet");
    if (beta <= 0) throw std::invalid_argument("make_uniform_code: beta must be > 0");
    const double log_alpha = std::log2(double(alphabet));

    UniformCodeConfig cfg;
    cfg.n = n;
    cfg.alphabet = alphabet;
    cfg.beta = beta;
    cfg.mode = mode;
    cfg.key = key;
    cfg.eps_n = epsilon_n(n, beta);
    cfg.gamma_n = gamma_bits(n, alphabet);
    cfg.bits_type = phi2_bits(n, alphabet);

    const int64_t n_eps = ceil_guarded(std::pow(double(n), 0.5 + beta));
    if (mode == RateMode::KnownEntropy) {
        if (!(h_or_hl > 0 && h_or_hl <= log_alpha + 1e-12))
            throw std::invalid_argument("make_uniform_code: H out of (0, log2|X|]");
        cfg.h_low = cfg.h_high = h_or_hl;
        cfg.rate = h_or_hl + cfg.eps_n;
        cfg.seed_bits_formula = int(2 * n_eps + 2 * cfg.bits_type);
    } else {
        if (!(h_or_hl >= 0 && h_or_hl < h_u && h_u <= log_alpha + 1e-12))
            throw std::invalid_argument("make_uniform_code: need 0 <= H_l < H_u <= log2|X|");
        cfg.h_low = h_or_hl;
        cfg.h_high = h_u;
        cfg.rate = h_u + cfg.eps_n;
        cfg.seed_bits_formula =
            int(2 * ceil_guarded(double(n) * cfg.eps_n + cfg.gamma_n) +
                ceil_guarded(double(n) * (h_u - h_or_hl)));
    }
    cfg.bits_index = int(ceil_guarded(double(n) * cfg.rate));
    if (cfg.bits_index > 120)
        throw std::invalid_argument("make_uniform_code: index width beyond 120 bits");
    cfg.seed_bits = seed_bits_override.value_or(cfg.seed_bits_formula);
    if (cfg.seed_bits < 1 || cfg.seed_bits > 128)
        throw std::invalid_argument("make_uniform_code: seed length out of [1,128] bits");
    return cfg;
}

UcMessage uc_encode(const UniformCodeConfig& cfg, u128 u, std::span<const uint8_t> x) {
    if (x.size() != cfg.n) throw std::invalid_argument("uc_encode: wrong sequence length");
    UcMessage m;
    m.index = phi1_eval(cfg.key, u, x, cfg.alphabet, cfg.bits_index);
    m.type_code = phi2_eval(cfg.key, u, type_of(x, cfg.alphabet));
    return m;
}

std::optional<std::vector<uint8_t>> uc_decode(const UniformCodeConfig& cfg, u128 u,
                                              const UcMessage& msg) {
    auto t = phi2_invert(cfg.key, u, msg.type_code, cfg.n, cfg.alphabet);
    if (!t) return std::nullopt;
    if (phi1_injective(*t, cfg.bits_index))
        return phi1_invert(cfg.key, u, *t, msg.index, cfg.bits_index);
    return std::vector<uint8_t>(cfg.n, 0);  // arbitrary-sequence clause
}

std::vector<uint8_t> sample_iid(const FiniteDist& p, uint32_t n, Stream& rng) {
    std::vector<uint8_t> x(n);
    for (uint32_t i = 0; i < n; ++i) {
        double v = rng.next_double();
        double acc = 0;
        int sym = p.alphabet_size() - 1;
        for (int a = 0; a < p.alphabet_size(); ++a) {
            acc += p[a];
            if (v < acc) { sym = a; break; }
        }
        x[i] = uint8_t(sym);
    }
    return x;
}

PeEstimate measure_pe(const UniformCodeConfig& cfg, const FiniteDist& px, uint64_t trials,
                      Stream& rng) {
    if (trials < 1) throw std::invalid_argument("measure_pe: trials < 1");
    if (px.alphabet_size() != cfg.alphabet)
        throw std::invalid_argument("measure_pe: alphabet mismatch");
    const uint64_t base = rng.next_u64();
    std::atomic<uint64_t> errors{0};
    parallel_chunks(trials, 1024, [&](uint64_t, uint64_t lo, uint64_t hi) {
        uint64_t local = 0;
        for (uint64_t i = lo; i < hi; ++i) {
            Stream s = derive_stream(base, "pe-trial", i);
            auto x = sample_iid(px, cfg.n, s);
            u128 u = s.bits(cfg.seed_bits);
            auto dec = uc_decode(cfg, u, uc_encode(cfg, u, x));
            if (!dec || *dec != x) ++local;
        }
        errors += local;
    });
    PeEstimate est;
    est.trials = trials;
    est.estimate = double(errors.load()) / double(trials);
    double sigma = std::sqrt(std::max(est.estimate * (1 - est.estimate), 1e-12) / double(trials));
    est.ci_low = std::max(0.0, est.estimate - 1.96 * sigma);
    est.ci_high = std::min(1.0, est.estimate + 1.96 * sigma);
    return est;
}

PeEstimate measure_pe_exact(const UniformCodeConfig& cfg, const FiniteDist& px) {
    if (px.alphabet_size() != cfg.alphabet)
        throw std::invalid_argument("measure_pe_exact: alphabet mismatch");
    double pe = 0;
    for (const auto& ti : type_table(cfg, px))
        if (!ti.injective) pe += ti.prob;
    PeEstimate est;
    est.exact = true;
    est.estimate = pe;
    est.ci_low = est.ci_high = pe;
    return est;
}

UeResult measure_ue_exact(const UniformCodeConfig& cfg, const FiniteDist& px) {
    if (px.alphabet_size() != cfg.alphabet)
        throw std::invalid_argument("measure_ue_exact: alphabet mismatch");
    const double enum_count = std::pow(double(cfg.alphabet), double(cfg.n)) *
                              std::exp2(double(cfg.seed_bits));
    if (enum_count > double(1 << 24))
        throw std::invalid_argument(
            "measure_ue_exact: |X|^n * 2^d_n beyond 2^24; use measure_ue_mc");
    const int msg_bits = cfg.message_bits();
    if (msg_bits > 24)
        throw std::invalid_argument("measure_ue_exact: message space beyond 2^24 entries");

    auto types = type_table(cfg, px);
    const uint64_t n_seeds = uint64_t(1) << cfg.seed_bits;
    const size_t space = size_t(1) << msg_bits;
    const double u0 = std::exp2(-double(msg_bits));

    // fixed chunk partition so the merge order is schedule-independent
    const uint64_t n_chunks = std::min<uint64_t>(16, n_seeds);
    const uint64_t chunk = (n_seeds + n_chunks - 1) / n_chunks;
    std::vector<std::vector<double>> partial(size_t(n_chunks));
    parallel_chunks(n_seeds, chunk, [&](uint64_t c, uint64_t lo, uint64_t hi) {
        auto& w = partial[size_t(c)];
        w.assign(space, 0.0);
        for (uint64_t uv = lo; uv < hi; ++uv) {
            const u128 u = u128(uv);
            for (const auto& ti : types) {
                if (ti.prob == 0) continue;
                const double mass = ti.prob / double(ti.size) / double(n_seeds);
                const uint64_t j = phi2_eval(cfg.key, u, ti.desc) - 1;
                if (ti.injective) {
                    FeistelPrp prp = phi1_injection(cfg.key, u, ti.desc, cfg.bits_index);
                    for (uint64_t r = 0; r < ti.size; ++r) {
                        uint64_t i = uint64_t(prp.forward(u128(r)));
                        w[(size_t(i) << cfg.bits_type) | size_t(j)] += mass;
                    }
                } else {
                    // non-injective branch: per-sequence PRF values
                    for (uint64_t r = 0; r < ti.size; ++r) {
                        auto x = unrank_in_type(ti.desc, BigInt(r));
                        uint64_t i = uint64_t(phi1_eval(cfg.key, u, x, cfg.alphabet,
                                                        cfg.bits_index)) - 1;
                        w[(size_t(i) << cfg.bits_type) | size_t(j)] += mass;
                    }
                }
            }
        }
    });

    UeResult res;
    res.exact = true;
    double vdist = 0, kl = 0;
    for (size_t m = 0; m < space; ++m) {
        double p = 0;
        for (auto& w : partial) p += w[m];
        vdist += std::abs(p - u0);
        if (p > 0) kl += p * std::log2(p / u0);
    }
    res.vdist = vdist;
    res.kl = std::max(kl, 0.0);
    return res;
}

UeResult measure_ue_mc(const UniformCodeConfig& cfg, const FiniteDist& px, uint64_t samples,
                       Stream& rng) {
    if (samples < 1) throw std::invalid_argument("measure_ue_mc: samples < 1");
    struct U128Hash {
        size_t operator()(u128 v) const {
            return size_t(uint64_t(v) * 0x9e3779b97f4a7c15ULL ^ uint64_t(v >> 64));
        }
    };
    std::unordered_map<u128, uint64_t, U128Hash> counts;
    const uint64_t base = rng.next_u64();
    for (uint64_t s = 0; s < samples; ++s) {
        Stream st = derive_stream(base, "ue-sample", s);
        auto x = sample_iid(px, cfg.n, st);
        u128 u = st.bits(cfg.seed_bits);
        UcMessage m = uc_encode(cfg, u, x);
        u128 idx = ((m.index - 1) << cfg.bits_type) | u128(m.type_code - 1);
        ++counts[idx];
    }
    const double bits = double(cfg.message_bits());
    const double u0 = std::exp2(-bits);
    double vdist = 0, kl = 0;
    uint64_t support = 0;
    for (auto& [_, c] : counts) {
        double p = double(c) / double(samples);
        vdist += std::abs(p - u0);
        kl += p * std::log2(p / u0);
        ++support;
    }
    vdist += (std::exp2(bits) - double(support)) * u0;
    UeResult res;
    res.vdist = vdist;
    res.kl = std::max(kl, 0.0);
    res.samples = samples;
    return res;
}

}  // namespace covertpress
