#pragma once

#include <cstdint>
#include <random>

namespace ivts {

/// SplitMix64 finalizer over (base, index): one independent stream per item.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double gaussian() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    /// +1 or -1 with equal probability.
    int rademacher() { return (engine_() >> 63) ? 1 : -1; }
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace ivts
