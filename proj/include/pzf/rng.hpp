// Keyed counter-style randomness. Every uniform is a pure function of
// (seed, key), so replay never depends on evaluation order or thread
// count, and two processes sharing a seed see identical randomness.
#pragma once

#include <cstdint>

namespace pzf {

// splitmix64 finalizer (Stafford mix13). Full-avalanche 64-bit mixer.
constexpr uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

namespace detail {
// Distinct odd constants per key slot so (a,b) and (b,a) differ.
constexpr uint64_t kSlot0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kSlot1 = 0xD1B54A32D192ED03ULL;
constexpr uint64_t kSlot2 = 0x8CB92BA72F3D8DD7ULL;
}  // namespace detail

constexpr uint64_t keyed_bits(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t h = mix64(seed ^ detail::kSlot0);
    h = mix64(h ^ (a + detail::kSlot0));
    h = mix64(h ^ (b + detail::kSlot1));
    h = mix64(h ^ (c + detail::kSlot2));
    return h;
}

// Child seed for trial `index` of a campaign keyed by `master`.
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
    return keyed_bits(master, index, 0x5eedULL);
}

// Child seed for (trial, vertex), used by min-over-vertices campaigns.
constexpr uint64_t derive_seed(uint64_t master, uint64_t trial, uint64_t vertex) {
    return keyed_bits(master, trial, vertex, 0x5eedULL);
}

// True with probability num/den exactly: bits/2^64 < num/den compared in
// integers, so p = 1 fires unconditionally and no float tolerance enters.
constexpr bool bernoulli_bits(uint64_t bits, uint64_t num, uint64_t den) {
    using u128 = unsigned __int128;
    return static_cast<u128>(bits) * den < (static_cast<u128>(num) << 64);
}

// [0,1) double from the top 53 bits.
constexpr double unit_double(uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace pzf
