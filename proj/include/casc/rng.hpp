#pragma once

#include <cstdint>
#include <random>

namespace casc {

// splitmix64 finalizer. Used only for seed derivation, never as the stream.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-realization seed: a pure function of (base_seed, stream_index), so
// realizations can run in any order or thread and still see identical streams.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream_index) {
    return splitmix64(splitmix64(base_seed) ^ (0xD1B54A32D192ED03ULL * (stream_index + 1)));
}

// mt19937_64 output is fully specified by the standard, so streams are
// reproducible across compilers and platforms.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform double in [0, 1) built from raw engine words; std distributions are
// implementation-defined and would break byte-identical reproducibility.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection from the top of the 64-bit range.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace casc
