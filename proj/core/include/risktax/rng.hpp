#pragma once

#include <array>
#include <cstdint>

namespace risktax {

/// Deterministic random stream: xoshiro256++ seeded through splitmix64 from a
/// (seed, stream_index) pair. Identical pairs reproduce identical draws
/// bit-exactly; distinct stream indices give independent parallel substreams
/// (one per Monte Carlo path).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Exponential with the given rate, by inverse CDF (fixed consumption:
    /// one uniform per draw).
    double exponential(double rate);

    /// Standard normal via Box-Muller (two uniforms per pair, second value
    /// cached), so consumption is deterministic.
    double normal();

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace risktax
