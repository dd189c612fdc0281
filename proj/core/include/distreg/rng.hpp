#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace distreg {

// Counter-based splittable random stream.
//
// A stream is keyed by (base seed, purpose tag, index) and produces its
// outputs from a keyed SplitMix64 counter, so independent tasks (replicates,
// grid points, worker threads) can each derive their own stream and draw from
// it in any schedule without affecting one another. Identical keys give
// bit-identical sequences.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0)
        : key_(derive_key(seed, tag, index)) {}

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix(key_ ^ counter_);
    }

    // Uniform on [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Uniform on {0, 1, ..., n-1}, unbiased (rejection sampling).
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % n;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (const char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::string_view tag,
                                    std::uint64_t index) {
        std::uint64_t k = mix(seed + 0x9E3779B97F4A7C15ULL);
        k = mix(k ^ fnv1a(tag));
        k = mix(k ^ (index + 0x9E3779B97F4A7C15ULL));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace distreg
