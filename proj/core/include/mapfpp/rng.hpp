#pragma once

#include <cstdint>
#include <random>

namespace mapfpp {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// independent stream seeds: derive_seed(seed, a, b, ...) hashes the path
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t next, Rest... rest) {
    return derive_seed(derive_seed(seed, stream), next, rest...);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

template <typename... Streams>
Rng make_rng(std::uint64_t seed, Streams... streams) {
    return Rng(derive_seed(seed, static_cast<std::uint64_t>(streams)...));
}

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mapfpp
