#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace circ {

// Seeded, portable random source. std::mt19937_64 has a fully specified
// output sequence, and uniform doubles are derived from the raw 64-bit
// stream directly (53 mantissa bits), so results are identical across
// platforms and standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller on the portable uniform stream.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Per-stage seed derivation: one top-level seed, expanded by hashing the
// stage name, so stages can be re-run in isolation with the same stream.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage) {
    std::uint64_t h = fnv1a64(stage);
    h ^= root + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

} // namespace circ
