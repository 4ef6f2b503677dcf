#pragma once

#include <cstdint>
#include <vector>

namespace liftlab {

/// Deterministic 64-bit generator (xoshiro-style splitmix chain).
///
/// All randomized operations in the library take an explicit Rng (or a seed
/// from which one is built), so identical seeds reproduce identical outputs
/// independent of platform or thread count. Parallel trials use
/// Rng::derived(seed, trial): trial streams never share state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so that small seeds do not produce correlated leading draws.
        for (int i = 0; i < 4; ++i) next_u64();
    }

    /// Stream splitting rule: stream i of `seed` is seeded with
    /// splitmix64(seed XOR golden_gamma * (i + 1)).
    static Rng derived(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))));
    }

    std::uint64_t next_u64() {
        state_ = splitmix64_step(state_);
        return mix(state_);
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    static std::uint64_t splitmix64(std::uint64_t x) { return mix(splitmix64_step(x)); }

private:
    static std::uint64_t splitmix64_step(std::uint64_t x) { return x + 0x9E3779B97F4A7C15ULL; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace liftlab
