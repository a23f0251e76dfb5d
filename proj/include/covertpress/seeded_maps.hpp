#pragma once

#include <optional>
#include <span>
#include <vector>

#include "covertpress/prf.hpp"
#include "covertpress/types.hpp"

namespace covertpress {

// Deterministic, key-seeded realizations of the two random maps of the
// uniform source code. phi1 is injective per (key, u, type) on types whose
// class fits the codomain; elsewhere it is an independent per-sequence PRF.
// phi2 is an injection of the type index into the gamma(n) budget.
//
// Values are 1-based, matching the index sets [1, 2^bits].

bool phi1_injective(const TypeClassDesc& t, int bits_out);

// The keyed injection behind phi1 on the injective branch: composes with
// rank_in_type. Exposed so exact-law enumeration can walk ranks directly.
FeistelPrp phi1_injection(const MapKey& key, u128 u, const TypeClassDesc& t, int bits_out);

u128 phi1_eval(const MapKey& key, u128 u, std::span<const uint8_t> x, int alphabet_size,
               int bits_out);

// Inverse on the injective branch only; not-found when the index is unused.
std::optional<std::vector<uint8_t>> phi1_invert(const MapKey& key, u128 u,
                                                const TypeClassDesc& t, u128 index,
                                                int bits_out);

int phi2_bits(uint32_t n, int alphabet_size);

uint64_t phi2_eval(const MapKey& key, u128 u, const TypeClassDesc& t);

std::optional<TypeClassDesc> phi2_invert(const MapKey& key, u128 u, uint64_t index,
                                         uint32_t n, int alphabet_size);

}  // namespace covertpress
