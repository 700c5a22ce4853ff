#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dbas {

/// SplitMix64 mixing step. This is the stable hash used wherever one seed is
/// derived from another (replicate seeds, per-refit seeds), so that runs are
/// byte-reproducible across platforms and standard-library versions.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// derive_seed(master, a, b, c) = chained splitmix64 over the stream labels.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t s = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

// mt19937_64 is fully specified by the standard, so seeding it with a single
// 64-bit value gives identical streams everywhere. The std <random>
// distribution classes are implementation-defined and must not be used; the
// helpers below replace them.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// 53-bit uniform in [0, 1).
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform draw from {0, ..., n-1} by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Standard normal draw (Box-Muller, cosine branch; consumes two uniforms).
inline double normal_draw(Rng& rng) {
    const double u1 = 1.0 - uniform_double(rng);  // (0, 1], keeps log finite
    const double u2 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

}  // namespace dbas
