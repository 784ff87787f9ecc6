#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aqc {

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(s.data(), s.size());
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// All randomness flows from one root seed; each stage derives its own
// stream by stable hashing of (seed, stage name), so adding a stage never
// perturbs the streams of the others.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage) {
    std::uint64_t h = fnv1a64(stage);
    h = fnv1a64(&root, sizeof(root), h);
    return splitmix64(h);
}

// Counter-based sub-stream, e.g. one per measurement shot.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage,
                                 std::uint64_t counter) {
    return splitmix64(derive_seed(root, stage) ^ splitmix64(counter + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

} // namespace aqc
