#include "keypred/keyring.hpp"

#include <algorithm>
#include <stdexcept>

#include "keypred/rng.hpp"

namespace keypred {

namespace {

// Stream tag per node so Random generation can be parallelized without
// changing output; the inheritance schemes use the same per-node streams even
// though they run sequentially.
Xoshiro256 node_rng(uint64_t seed, uint32_t lid) {
    return Xoshiro256(derive_seed(seed, 0x6b657972 /* ring streams */, lid));
}

std::vector<KeyRing> assign_inherited(const SchemeParams& params, uint64_t seed, bool with_replacement) {
    params.validate();
    const uint32_t n = params.network_size;
    const uint32_t k = params.ring_size;
    const uint32_t inherit = params.inherited_count();

    std::vector<KeyRing> rings;
    rings.reserve(n);
    {
        auto rng = node_rng(seed, 1);
        rings.push_back({1, sample_subset(rng, k, params.pool_size)});
    }
    for (uint32_t lid = 2; lid <= n; ++lid) {
        auto rng = node_rng(seed, lid);
        const auto& prev = rings.back().keys;

        std::vector<uint32_t> inherited_idx = sample_subset(rng, inherit, k);
        std::vector<uint32_t> ring;
        ring.reserve(k);
        for (uint32_t idx : inherited_idx) ring.push_back(prev[idx]);
        // ring is ascending: prev is sorted and indices are ascending.

        const std::vector<uint32_t>& excluded = with_replacement ? ring : prev;
        std::vector<uint32_t> fresh = sample_subset_excluding(rng, k - inherit, params.pool_size, excluded);

        std::vector<uint32_t> merged(k);
        std::merge(ring.begin(), ring.end(), fresh.begin(), fresh.end(), merged.begin());
        rings.push_back({lid, std::move(merged)});
    }
    return rings;
}

}  // namespace

std::vector<KeyRing> assign_random(const SchemeParams& params, uint64_t seed) {
    params.validate();
    if (params.scheme != Scheme::Random) throw std::invalid_argument("scheme must be random");
    std::vector<KeyRing> rings;
    rings.reserve(params.network_size);
    for (uint32_t lid = 1; lid <= params.network_size; ++lid) {
        auto rng = node_rng(seed, lid);
        rings.push_back({lid, sample_subset(rng, params.ring_size, params.pool_size)});
    }
    return rings;
}

std::vector<KeyRing> assign_two_phase(const SchemeParams& params, uint64_t seed) {
    if (params.scheme != Scheme::TwoPhase) throw std::invalid_argument("scheme must be two-phase");
    return assign_inherited(params, seed, false);
}

std::vector<KeyRing> assign_two_phase_wr(const SchemeParams& params, uint64_t seed) {
    if (params.scheme != Scheme::TwoPhaseWR) throw std::invalid_argument("scheme must be two-phase-wr");
    return assign_inherited(params, seed, true);
}

std::vector<KeyRing> assign_rings(const SchemeParams& params, uint64_t seed) {
    switch (params.scheme) {
        case Scheme::Random: return assign_random(params, seed);
        case Scheme::TwoPhase: return assign_two_phase(params, seed);
        case Scheme::TwoPhaseWR: return assign_two_phase_wr(params, seed);
    }
    throw std::invalid_argument("unknown scheme");
}

uint32_t shared_key_count(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    uint32_t n = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

std::vector<uint32_t> shared_keys(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string dump_rings(const std::vector<KeyRing>& rings) {
    std::string out;
    for (const auto& r : rings) {
        out += std::to_string(r.lid);
        for (uint32_t key : r.keys) {
            out += ',';
            out += std::to_string(key);
        }
        out += '\n';
    }
    return out;
}

}  // namespace keypred
