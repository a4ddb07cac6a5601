#include "quatgro/rng.hpp"

#include <cmath>

namespace quatgro {

namespace {

std::uint64_t splitmix64_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    // Fold the stream id into the key so that distinct streams from the same
    // seed behave as independent generators.
    key_ = splitmix64_finalize(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64_finalize(seed + counter * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t Rng::next_u64() {
    return mix(key_, ++counter_);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_normal() {
    // Box-Muller without caching the second value: each call consumes two
    // uniforms, keeping the draw a pure function of the counter position.
    double u1 = next_double();
    double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Quaternion Rng::next_unit_quaternion() {
    while (true) {
        Quaternion q(next_normal(), next_normal(), next_normal(), next_normal());
        const double n = q.norm();
        if (n > 1e-100) return q / n;
    }
}

Quaternion Rng::next_gaussian_quaternion(double variance) {
    const double s = std::sqrt(variance);
    return Quaternion(s * next_normal(), s * next_normal(), s * next_normal(),
                      s * next_normal());
}

}  // namespace quatgro
