#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "errors.hpp"

namespace simonovits {

// Reproducible random stream: mt19937_64 seeded through seed_seq with the
// 32-bit halves of (seed, stream). Both engines are fully specified by the
// standard, so sequences agree across platforms.
class RngStream {
public:
    static constexpr const char* algorithm = "mt19937_64/seed_seq";

    explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        eng_.seed(seq);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidInput("empty range");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

    // Child stream for task `i`, independent of how many draws this one made.
    RngStream split(std::uint64_t i) const { return RngStream(seed_, stream_ * 0x9E3779B97F4A7C15ULL + i + 1); }

private:
    std::uint64_t seed_, stream_;
    std::mt19937_64 eng_;
};

} // namespace simonovits
