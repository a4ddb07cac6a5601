#pragma once

#include <cstdint>

#include "quatgro/quaternion.hpp"

namespace quatgro {

/// Counter-based deterministic random stream. Every draw is a pure function
/// of (seed, stream, counter), so results are identical across platforms and
/// standard-library versions, and disjoint counter ranges can be handed to
/// parallel workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Stateless mixing function underlying the stream.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double();

    /// Standard normal via Box-Muller on two uniform draws.
    double next_normal();

    /// Uniform on the unit sphere S^3, by normalizing a 4-dim normal draw.
    Quaternion next_unit_quaternion();

    /// Quaternion with all four components normal(0, variance).
    Quaternion next_gaussian_quaternion(double variance);

    std::uint64_t counter() const { return counter_; }
    void set_counter(std::uint64_t c) { counter_ = c; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace quatgro
