#pragma once

#include <cstdint>

namespace eraserlab {

// Deterministic stream RNG for Monte Carlo runs.
//
// Every trajectory draws from its own stream, derived from (master seed,
// trajectory index) with splitmix64. Batches therefore produce identical
// output no matter how they are partitioned across workers. We avoid
// std::uniform_real_distribution so results do not depend on the standard
// library implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {
        // warm up; splitmix64 output is already well mixed after one step
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1) with 53-bit resolution
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

private:
    std::uint64_t state_;
};

// Stream seed for the i-th element of a batch under a master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x632be59bd9b4e019ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace eraserlab
