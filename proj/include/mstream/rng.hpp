#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mstream/rational.hpp"

namespace mstream {

// splitmix64 step; used for seed derivation so that child generators from
// nearby seeds are decorrelated.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic seeded generator. All bounded draws are produced by our own
// rejection sampling on top of mt19937_64 raw output, so streams are
// reproducible across platforms and standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, n). n >= 1.
    std::uint64_t below(std::uint64_t n);

    // Exact Bernoulli(q) for a rational q in [0, 1]: draws a uniform integer
    // below the denominator and compares against the numerator.
    bool bernoulli(const Rat& q);

    // Independent child generator for stream index `stream`.
    Rng split(std::uint64_t stream) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

// In-place Fisher-Yates shuffle driven by Rng::below (deterministic).
template <typename T>
void fisher_yates(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace mstream
