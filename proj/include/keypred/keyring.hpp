#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keypred/scheme_params.hpp"

namespace keypred {

/// One node's preinstalled keys. `lid` is the 1-based position in the logical
/// assignment queue; `keys` is kept sorted ascending.
struct KeyRing {
    uint32_t lid = 0;
    std::vector<uint32_t> keys;
};

/// Generates all N rings for the scheme in `params`. Pure function of
/// (params, seed); node i draws from its own derived stream so the result
/// does not depend on evaluation order.
std::vector<KeyRing> assign_rings(const SchemeParams& params, uint64_t seed);

std::vector<KeyRing> assign_random(const SchemeParams& params, uint64_t seed);
std::vector<KeyRing> assign_two_phase(const SchemeParams& params, uint64_t seed);
std::vector<KeyRing> assign_two_phase_wr(const SchemeParams& params, uint64_t seed);

/// Number of keys two sorted rings have in common.
uint32_t shared_key_count(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);

/// The full intersection of two sorted rings, ascending.
std::vector<uint32_t> shared_keys(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);

/// Text dump, one `lid,key0,key1,...` line per node, keys ascending.
std::string dump_rings(const std::vector<KeyRing>& rings);

}  // namespace keypred
