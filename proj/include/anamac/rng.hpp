#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace anamac {

// Stateless counter-based randomness. Every draw is a pure function of
// (seed, stream, counter), so trials can run in any order on any number of
// workers and still produce identical results.
constexpr uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t mix3(uint64_t seed, uint64_t stream, uint64_t counter) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

// Domain-separation constants for the independent streams used by the library.
namespace streams {
constexpr uint64_t keygen      = 0x6b65792d67656e00ULL;
constexpr uint64_t noise       = 0x6e6f697365000000ULL;
constexpr uint64_t toy_prf     = 0x746f792d70726600ULL;
constexpr uint64_t trial_key   = 0x7472692d6b657900ULL;
constexpr uint64_t trial_noise = 0x7472692d6e6f6900ULL;
constexpr uint64_t wrong_key   = 0x77726f6e672d6b00ULL;
constexpr uint64_t sample_key  = 0x73616d706c650000ULL;
} // namespace streams

// Uniform in (0, 1]: never returns 0, so log(u) is finite.
inline double u64_to_unit(uint64_t x) {
    return double((x >> 11) + 1) * 0x1p-53;
}

// i.i.d. standard Gaussian indexed by symbol position. Symbols 2m and 2m+1
// share one Box-Muller pair; each output still depends only on
// (seed, stream, its own index).
inline double gaussian_at(uint64_t seed, uint64_t stream, uint64_t index) {
    uint64_t base = index & ~uint64_t(1);
    double u1 = u64_to_unit(mix3(seed, stream, base));
    double u2 = u64_to_unit(mix3(seed, stream, base + 1));
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    return (index & 1) ? r * std::sin(a) : r * std::cos(a);
}

} // namespace anamac
