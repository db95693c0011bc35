#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

// Counter-based PRNG used by every stochastic code path in the project.
// The algorithm (SplitMix64 over a 64-bit counter) is part of the fixture
// file-format contract: the same seed must produce byte-identical streams
// on every platform, so only unsigned 64-bit arithmetic is used.

namespace polarscope::rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive a substream seed from a parent seed and a textual tag (FNV-1a
/// over the tag, mixed with the parent). Used to give each restart,
/// window, or generator phase its own independent stream.
constexpr std::uint64_t derive(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return mix64(seed ^ mix64(h));
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + kGolden));
}

class Prng {
public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return mix64(seed_ + (++counter_) * kGolden); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire multiply-shift; the residual
    /// bias at 64 bits is far below anything observable and the mapping is
    /// identical on every platform.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Index into a cumulative weight table (strictly increasing, last =
    /// total). Binary search on uniform01() * total.
    std::size_t pick_cumulative(const std::vector<double>& cumulative) {
        const double x = uniform01() * cumulative.back();
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= x) lo = mid + 1; else hi = mid;
        }
        return lo;
    }

    /// Deterministic Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace polarscope::rng
