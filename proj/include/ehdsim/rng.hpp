#ifndef EHDSIM_RNG_HPP
#define EHDSIM_RNG_HPP

#include <cmath>
#include <cstdint>

#include "ehdsim/constants.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

/// Deterministic keyed random stream (splitmix64 core).
///
/// Each logical entity (tip emitter, droplet) owns a stream keyed by
/// (global seed, stream key); draws are identical across platforms and
/// worker counts, which is what the reproducibility contract rests on.
class RngStream {
public:
    RngStream() = default;
    RngStream(std::uint64_t seed, std::uint64_t key_hi, std::uint64_t key_lo = 0)
        : state_(mix(mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ key_hi) ^ mix(key_lo)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    /// Uniformly distributed unit vector.
    Vec3 next_unit_vector() {
        const double z = 2.0 * next_double() - 1.0;
        const double phi = 2.0 * pi * next_double();
        const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
};

/// FNV-1a 64-bit, used for config provenance hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ehd

#endif // EHDSIM_RNG_HPP
