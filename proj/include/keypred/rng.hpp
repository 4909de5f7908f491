#pragma once

#include <cstdint>
#include <algorithm>
#include <vector>

namespace keypred {

// SplitMix64 step; used for seed expansion only.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic sub-seed derivation: every parallel stream (per node, per
// trial, per purpose) gets its seed as derive_seed(base, tag). Two SplitMix64
// rounds decorrelate adjacent tags.
inline uint64_t derive_seed(uint64_t base, uint64_t tag) {
    uint64_t s = base ^ (tag * 0xD1B54A32D192ED03ULL);
    (void)splitmix64(s);
    return splitmix64(s);
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
    return derive_seed(derive_seed(base, a), b);
}

// xoshiro256++ 1.0. Chosen over std engines because its output is fixed by
// the algorithm, not the standard library implementation, so dumps diff
// cleanly across toolchains.
class Xoshiro256 {
public:
    explicit Xoshiro256(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t operator()() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, n). Lemire multiply-shift with rejection.
    uint64_t below(uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(operator()()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(operator()()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    double uniform01() {
        return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Uniform `count`-subset of [0, n), ascending. Floyd's algorithm, O(count)
// draws; the subsets stay small (<= ring size) so ordered insertion beats a
// hash set.
inline std::vector<uint32_t> sample_subset(Xoshiro256& rng, uint32_t count, uint32_t n) {
    std::vector<uint32_t> out;
    out.reserve(count);
    for (uint32_t j = n - count; j < n; ++j) {
        auto t = static_cast<uint32_t>(rng.below(j + 1));
        auto it = std::lower_bound(out.begin(), out.end(), t);
        if (it != out.end() && *it == t) {
            uint32_t v = j;
            out.insert(std::lower_bound(out.begin(), out.end(), v), v);
        } else {
            out.insert(it, t);
        }
    }
    return out;
}

// Uniform `count`-subset of [0, n) \ excluded, ascending. `excluded` must be
// sorted and lie inside [0, n). Samples virtual indices against the reduced
// range, then shifts past exclusions in one merge pass.
inline std::vector<uint32_t> sample_subset_excluding(Xoshiro256& rng, uint32_t count, uint32_t n,
                                                     const std::vector<uint32_t>& excluded) {
    const auto e = static_cast<uint32_t>(excluded.size());
    std::vector<uint32_t> virt = sample_subset(rng, count, n - e);
    uint32_t shift = 0, ptr = 0;
    for (auto& v : virt) {
        while (ptr < e && excluded[ptr] <= v + shift) {
            ++shift;
            ++ptr;
        }
        v += shift;
    }
    return virt;
}

}  // namespace keypred
