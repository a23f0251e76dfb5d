#include "covertpress/types.hpp"

#include <cmath>
#include <stdexcept>

namespace covertpress {

namespace {

// C(s + parts - 1, parts - 1): compositions of s into `parts` parts.
BigInt compositions(uint64_t s, int parts) {
    if (parts == 0) return s == 0 ? 1 : 0;
    BigInt r = 1;
    for (int i = 1; i < parts; ++i) {
        r *= BigInt(s + uint64_t(i));
        r /= i;
    }
    return r;
}

}  // namespace

FiniteDist TypeClassDesc::empirical() const {
    std::vector<double> p(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) p[i] = double(counts[i]) / double(n);
    return FiniteDist(std::move(p));
}

TypeClassDesc type_of(std::span<const uint8_t> x, int alphabet_size) {
    if (x.empty()) throw std::invalid_argument("type_of: empty sequence");
    if (alphabet_size < 1) throw std::invalid_argument("type_of: alphabet size < 1");
    TypeClassDesc t;
    t.n = uint32_t(x.size());
    t.counts.assign(size_t(alphabet_size), 0);
    for (uint8_t s : x) {
        if (s >= alphabet_size) throw std::invalid_argument("type_of: symbol out of range");
        ++t.counts[s];
    }
    return t;
}

double gamma_bits(uint32_t n, int alphabet_size) {
    return double(alphabet_size) * std::log2(double(n) + 1.0);
}

BigInt count_types(uint32_t n, int alphabet_size) {
    return compositions(n, alphabet_size);
}

std::vector<TypeClassDesc> enumerate_types(uint32_t n, int alphabet_size, uint64_t cap) {
    if (n < 1 || alphabet_size < 1) throw std::invalid_argument("enumerate_types: bad arguments");
    BigInt total = count_types(n, alphabet_size);
    if (total > cap) throw std::runtime_error("enumerate_types: type count exceeds cap");

    std::vector<TypeClassDesc> out;
    out.reserve(size_t(total));
    std::vector<uint32_t> c(size_t(alphabet_size), 0);
    // lexicographic: recurse over coordinates, last coordinate absorbs the rest
    auto rec = [&](auto&& self, int pos, uint32_t rem) -> void {
        if (pos == alphabet_size - 1) {
            c[size_t(pos)] = rem;
            out.push_back(TypeClassDesc{n, c});
            return;
        }
        for (uint32_t v = 0; v <= rem; ++v) {
            c[size_t(pos)] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

BigInt type_class_size(const TypeClassDesc& t) {
    BigInt r = 1;
    uint64_t placed = 0;
    for (uint32_t c : t.counts) {
        for (uint32_t i = 1; i <= c; ++i) {
            r *= BigInt(++placed);
            r /= i;
        }
    }
    return r;
}

BigInt type_lex_rank(const TypeClassDesc& t) {
    BigInt rank = 0;
    uint32_t rem = t.n;
    int k = t.alphabet_size();
    for (int j = 0; j < k - 1; ++j) {
        for (uint32_t v = 0; v < t.counts[size_t(j)]; ++v)
            rank += compositions(rem - v, k - j - 1);
        rem -= t.counts[size_t(j)];
    }
    return rank;
}

TypeClassDesc type_lex_unrank(uint32_t n, int alphabet_size, const BigInt& rank) {
    if (rank < 0 || rank >= count_types(n, alphabet_size))
        throw std::out_of_range("type_lex_unrank: rank out of range");
    TypeClassDesc t;
    t.n = n;
    t.counts.assign(size_t(alphabet_size), 0);
    BigInt r = rank;
    uint32_t rem = n;
    for (int j = 0; j < alphabet_size - 1; ++j) {
        uint32_t v = 0;
        for (;; ++v) {
            BigInt block = compositions(rem - v, alphabet_size - j - 1);
            if (r < block) break;
            r -= block;
        }
        t.counts[size_t(j)] = v;
        rem -= v;
    }
    t.counts[size_t(alphabet_size) - 1] = rem;
    return t;
}

BigInt rank_in_type(std::span<const uint8_t> x, int alphabet_size) {
    TypeClassDesc t = type_of(x, alphabet_size);
    std::vector<uint32_t> rem = t.counts;
    BigInt size = type_class_size(t);
    BigInt rank = 0;
    uint64_t len = x.size();
    for (uint8_t s : x) {
        // arrangements starting with a smaller symbol at this position
        for (int a = 0; a < s; ++a) {
            if (rem[size_t(a)] == 0) continue;
            rank += size * rem[size_t(a)] / BigInt(len);
        }
        size = size * rem[s] / BigInt(len);
        --rem[s];
        --len;
    }
    return rank;
}

std::vector<uint8_t> unrank_in_type(const TypeClassDesc& t, const BigInt& rank) {
    BigInt size = type_class_size(t);
    if (rank < 0 || rank >= size) throw std::out_of_range("unrank_in_type: rank out of range");
    std::vector<uint32_t> rem = t.counts;
    std::vector<uint8_t> x;
    x.reserve(t.n);
    BigInt r = rank;
    uint64_t len = t.n;
    for (uint32_t pos = 0; pos < t.n; ++pos) {
        for (int a = 0; a < t.alphabet_size(); ++a) {
            if (rem[size_t(a)] == 0) continue;
            BigInt block = size * rem[size_t(a)] / BigInt(len);
            if (r < block) {
                x.push_back(uint8_t(a));
                size = block;
                --rem[size_t(a)];
                --len;
                break;
            }
            r -= block;
        }
    }
    return x;
}

}  // namespace covertpress
