#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tsko {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based seed split: the child seed depends only on the parent seed
/// and the path of counters, so adding more children never reshuffles the
/// ones already derived.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(parent);
    for (auto c : path) {
        s = mix64(s ^ mix64(c + 0x632be59bd9b4e019ULL));
    }
    return s;
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) {
    return derive_seed(parent, {counter});
}

/// Named stream labels used across modules.
namespace stream {
inline constexpr std::uint64_t autoencoder = 1;
inline constexpr std::uint64_t knockoff_noise = 2;
inline constexpr std::uint64_t prediction = 3;
inline constexpr std::uint64_t simulation = 4;
inline constexpr std::uint64_t run = 5;
} // namespace stream

} // namespace tsko
