#pragma once

#include <cstdint>
#include <random>

namespace qnet {

// SplitMix64 finalizer. Good avalanche, cheap, and stable across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from (master, tag, indices). Ensemble
// instances and substreams all take their seeds from here, so results are
// reproducible no matter how work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc908ULL);
    h = splitmix64(h ^ tag);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

// Stream tags, one per purpose. Values are arbitrary distinct constants.
namespace stream {
inline constexpr std::uint64_t positions = 0x01;
inline constexpr std::uint64_t topology = 0x02;
inline constexpr std::uint64_t links = 0x03;
inline constexpr std::uint64_t initial_state = 0x04;
inline constexpr std::uint64_t dynamics = 0x05;
inline constexpr std::uint64_t instance = 0x06;
inline constexpr std::uint64_t run = 0x07;
inline constexpr std::uint64_t restart = 0x08;
} // namespace stream

// mt19937_64 wrapped with portable distributions. The standard library's
// distribution objects are implementation-defined, so uniform doubles are
// produced from raw 53-bit draws instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace qnet
