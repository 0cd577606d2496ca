#pragma once

#include <cstdint>

// Portable counter-based pseudo-random primitives. All randomization in this
// project flows through splitmix64 so that seeded runs are bit-identical
// across platforms and thread counts.

namespace qmc {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_++); }

    // Unbiased uniform integer in [0, bound) by rejection.
    std::uint32_t below(std::uint32_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return static_cast<std::uint32_t>(v % bound);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Independent stream seed for (master seed, replication, coordinate).
// Injective in practice; identical inputs give identical streams everywhere.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t replication,
                                   std::uint64_t coordinate) {
    std::uint64_t h = mix64(master ^ 0xA0761D6478BD642Full);
    h = mix64(h ^ (replication + 0xE7037ED1A0B428DBull));
    h = mix64(h ^ (coordinate + 0x8EBC6AF09C88C6E3ull));
    return h;
}

}  // namespace qmc
