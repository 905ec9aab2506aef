// rng.hpp
// Seedable, splittable random stream. Identical seeds give identical streams
// on every platform: sampling never goes through the implementation-defined
// <random> distributions.

#pragma once

#include <cstdint>
#include <random>

namespace qss {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent child stream; depends only on this stream's seed and `stream_id`.
    Rng split(std::uint64_t stream_id) const {
        return Rng(mix(seed_ ^ mix(stream_id + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qss
