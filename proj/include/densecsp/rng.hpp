#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace densecsp {

// splitmix64 step; used only to derive seeds for substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random source: std::mt19937_64 plus an unbiased bounded
/// draw, so that identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound), bound >= 1. Rejection sampling keeps it exact.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
        if (bound == 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    bool bit() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Substream derivation: fold a fixed-length path into the master seed.
/// Workers never share a generator; they get substreams keyed by role and
/// branch/rank so results do not depend on scheduling.
inline Rng subrng(std::uint64_t master, std::uint64_t tag,
                  std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= tag + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= a + 0xbf58476d1ce4e5b9ULL;
    h ^= splitmix64(s);
    s ^= b + 0x94d049bb133111ebULL;
    h ^= splitmix64(s);
    return Rng(h);
}

/// s distinct indices uniform over the s-subsets of [0, m).
/// Floyd's algorithm: works unchanged for huge m (e.g. tuple-rank domains).
inline std::vector<std::uint64_t> sample_without_replacement(std::uint64_t m,
                                                             std::uint64_t s,
                                                             Rng& rng) {
    if (s > m) throw std::invalid_argument("sample larger than domain");
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(s));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(s) * 2);
    for (std::uint64_t j = m - s; j < m; ++j) {
        std::uint64_t t = rng.below(j + 1);
        if (seen.contains(t)) t = j;
        seen.insert(t);
        out.push_back(t);
    }
    return out;
}

/// Fisher-Yates permutation of [0, m).
inline std::vector<std::uint32_t> random_permutation(std::uint32_t m, Rng& rng) {
    std::vector<std::uint32_t> perm(m);
    for (std::uint32_t i = 0; i < m; ++i) perm[i] = i;
    for (std::uint32_t i = m; i > 1; --i) {
        const auto j = static_cast<std::uint32_t>(rng.below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

// Substream tags. Fixed constants so that runs are reproducible across builds.
namespace stream {
inline constexpr std::uint64_t maxcut_draw = 0x11;
inline constexpr std::uint64_t maxcut_samples = 0x12;
inline constexpr std::uint64_t maxcut_order = 0x13;
inline constexpr std::uint64_t maxcut_single_partition = 0x14;
inline constexpr std::uint64_t rcsp_draw = 0x21;
inline constexpr std::uint64_t rcsp_phase1_samples = 0x22;
inline constexpr std::uint64_t rcsp_phase1_order = 0x23;
inline constexpr std::uint64_t rcsp_phase2_order = 0x24;
inline constexpr std::uint64_t rcsp_phase2_samples = 0x25;
}  // namespace stream

}  // namespace densecsp
