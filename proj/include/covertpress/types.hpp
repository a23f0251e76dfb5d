#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "covertpress/dist.hpp"

namespace covertpress {

using BigInt = boost::multiprecision::cpp_int;

// Symbol-count vector of a length-n sequence; counts/n is the type.
struct TypeClassDesc {
    uint32_t n = 0;
    std::vector<uint32_t> counts;

    int alphabet_size() const { return int(counts.size()); }
    FiniteDist empirical() const;
    bool operator==(const TypeClassDesc&) const = default;
};

TypeClassDesc type_of(std::span<const uint8_t> x, int alphabet_size);

// gamma(n) = |X| log2(n+1), the type-index budget in bits.
double gamma_bits(uint32_t n, int alphabet_size);

// Number of types |P_n(X)| = C(n+|X|-1, |X|-1).
BigInt count_types(uint32_t n, int alphabet_size);

// All compositions of n into |X| parts, lexicographic on count vectors.
// Throws when the count would exceed the cap (default 1e6).
std::vector<TypeClassDesc> enumerate_types(uint32_t n, int alphabet_size,
                                           uint64_t cap = 1000000);

// Multinomial coefficient n! / prod(counts!).
BigInt type_class_size(const TypeClassDesc& t);

// Lexicographic position of t among enumerate_types(n, |X|), computed
// combinatorially.
BigInt type_lex_rank(const TypeClassDesc& t);
TypeClassDesc type_lex_unrank(uint32_t n, int alphabet_size, const BigInt& rank);

// Lexicographic rank of x among all arrangements of its multiset, and its
// inverse; unrank(type_of(x), rank(x)) == x.
BigInt rank_in_type(std::span<const uint8_t> x, int alphabet_size);
std::vector<uint8_t> unrank_in_type(const TypeClassDesc& t, const BigInt& rank);

}  // namespace covertpress
