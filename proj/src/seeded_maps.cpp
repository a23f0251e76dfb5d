#include "covertpress/seeded_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace covertpress {

namespace {

// type-keyed domain tags; u is always included so maps for different seeds
// come from disjoint PRF domains
TagBuffer phi1_tag(u128 u, const TypeClassDesc& t) {
    TagBuffer tag;
    tag.put_label("phi1-inj");
    tag.put_u128(u);
    tag.put_u64(t.n);
    for (uint32_t c : t.counts) tag.put_u64(c);
    return tag;
}

u128 big_to_u128(const BigInt& v) {
    u128 r = 0;
    BigInt x = v;
    for (int w = 0; w < 2; ++w) {
        r |= u128(uint64_t(x & 0xffffffffffffffffULL)) << (64 * w);
        x >>= 64;
    }
    return r;
}

}  // namespace

bool phi1_injective(const TypeClassDesc& t, int bits_out) {
    // class fits the codomain; implied by H(type) <= R_n via Lemma 2
    BigInt size = type_class_size(t);
    if (size == 1) return true;
    return msb(size - 1) < unsigned(bits_out);
}

FeistelPrp phi1_injection(const MapKey& key, u128 u, const TypeClassDesc& t, int bits_out) {
    return FeistelPrp(derive_subkey(key, phi1_tag(u, t)), bits_out);
}

u128 phi1_eval(const MapKey& key, u128 u, std::span<const uint8_t> x, int alphabet_size,
               int bits_out) {
    if (bits_out < 1) throw std::invalid_argument("phi1_eval: bits_out < 1");
    TypeClassDesc t = type_of(x, alphabet_size);
    if (phi1_injective(t, bits_out)) {
        FeistelPrp prp = phi1_injection(key, u, t, bits_out);
        return prp.forward(big_to_u128(rank_in_type(x, alphabet_size))) + 1;
    }
    TagBuffer tag;
    tag.put_label("phi1-prf");
    tag.put_u128(u);
    SubKey sk = derive_subkey(key, tag);
    uint64_t lo = sk.prf(x);
    TagBuffer tag2;
    tag2.put_label("phi1-prf-hi");
    tag2.put_u128(u);
    uint64_t hi = derive_subkey(key, tag2).prf(x);
    u128 v = (u128(hi) << 64) | u128(lo);
    if (bits_out < 128) v &= (u128(1) << bits_out) - 1;
    return v + 1;
}

std::optional<std::vector<uint8_t>> phi1_invert(const MapKey& key, u128 u,
                                                const TypeClassDesc& t, u128 index,
                                                int bits_out) {
    if (!phi1_injective(t, bits_out))
        throw std::invalid_argument("phi1_invert: type is not on the injective branch");
    if (index < 1 || index > (u128(1) << bits_out))
        throw std::out_of_range("phi1_invert: index out of range");
    FeistelPrp prp = phi1_injection(key, u, t, bits_out);
    u128 rank = prp.inverse(index - 1);
    BigInt size = type_class_size(t);
    BigInt r = (BigInt(uint64_t(rank >> 64)) << 64) | BigInt(uint64_t(rank));
    if (r >= size) return std::nullopt;
    return unrank_in_type(t, r);
}

int phi2_bits(uint32_t n, int alphabet_size) {
    double g = gamma_bits(n, alphabet_size);
    double rounded = std::round(g);
    if (std::abs(g - rounded) < 1e-9) return int(rounded);
    return int(std::ceil(g));
}

uint64_t phi2_eval(const MapKey& key, u128 u, const TypeClassDesc& t) {
    int bits = phi2_bits(t.n, t.alphabet_size());
    TagBuffer tag;
    tag.put_label("phi2");
    tag.put_u128(u);
    FeistelPrp prp(derive_subkey(key, tag), bits);
    return uint64_t(prp.forward(big_to_u128(type_lex_rank(t)))) + 1;
}

std::optional<TypeClassDesc> phi2_invert(const MapKey& key, u128 u, uint64_t index,
                                         uint32_t n, int alphabet_size) {
    int bits = phi2_bits(n, alphabet_size);
    if (index < 1 || u128(index) > (u128(1) << bits))
        throw std::out_of_range("phi2_invert: index out of range");
    TagBuffer tag;
    tag.put_label("phi2");
    tag.put_u128(u);
    FeistelPrp prp(derive_subkey(key, tag), bits);
    u128 r = prp.inverse(u128(index) - 1);
    BigInt rank = (BigInt(uint64_t(r >> 64)) << 64) | BigInt(uint64_t(r));
    if (rank >= count_types(n, alphabet_size)) return std::nullopt;
    return type_lex_unrank(n, alphabet_size, rank);
}

}  // namespace covertpress
