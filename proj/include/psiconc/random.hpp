#pragma once

#include <cstdint>
#include <random>

namespace psiconc {

/// One splitmix64 output for `state` (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t state) noexcept;

/// Seed of sub-stream `stream` under `seed`:
///   splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
/// Replication blocks and auxiliary samples each take their own stream so
/// results do not depend on how work is scheduled.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// mt19937_64 with platform-independent conversion to doubles.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on the open interval (0, 1): (k + 0.5) 2^-53, k the top 53 bits.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n) by multiply-shift; n > 0.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace psiconc
