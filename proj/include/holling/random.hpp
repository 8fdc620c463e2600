#pragma once

#include <cstdint>
#include <random>

namespace holling {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Sub-streams of one simulated path. Brownian motions get one stream per
/// species so that one-dimensional comparison processes can replay them.
enum class Stream : std::uint64_t { Brownian1 = 0, Brownian2 = 1, Brownian3 = 2, Jumps = 3 };

/// Derives the seed of a sub-stream from (master seed, path index, stream)
/// by chained mixing; any (path, stream) pair can be reconstructed directly.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t path_index,
                                   Stream stream) noexcept {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ splitmix64(path_index + 0x632be59bd9b4e019ULL));
    k = splitmix64(k ^ splitmix64(static_cast<std::uint64_t>(stream) + 0x8cb92ba72f3d8dd7ULL));
    return k;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t path_index, Stream stream) {
    return Engine(stream_key(seed, path_index, stream));
}

} // namespace holling
