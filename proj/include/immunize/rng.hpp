#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace immunize {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 output is bit-exact across platforms; the std distribution
// objects are not. All sampling goes through the helpers below so that a
// (seed, stream) pair reproduces byte-identical results everywhere.
inline std::mt19937_64 make_rng(uint64_t seed, uint64_t stream = 0) {
    return std::mt19937_64{splitmix64(seed ^ splitmix64(stream + 0x6a09e667f3bcc909ULL))};
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound), bound > 0, by rejection.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
        uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace immunize
