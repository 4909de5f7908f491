#pragma once

#include <cstdint>
#include <string>

namespace keypred {

enum class Scheme { Random, TwoPhase, TwoPhaseWR };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws std::invalid_argument

/// Parameters of one key-assignment run: N nodes, pool of L keys, rings of
/// k keys, inheritance ratio f (TwoPhase/TwoPhaseWR only).
struct SchemeParams {
    uint32_t network_size = 0;      // N
    uint32_t pool_size = 0;         // L
    uint32_t ring_size = 0;         // k
    double inheritance_ratio = 0.0; // f, ignored for Random
    Scheme scheme = Scheme::Random;

    double x() const { return static_cast<double>(ring_size) / pool_size; }
    bool uses_inheritance() const { return scheme != Scheme::Random; }

    // Number of keys copied from the predecessor. Only meaningful after
    // validate(): f*k must be an integer, we refuse to round.
    uint32_t inherited_count() const;

    /// Throws std::invalid_argument when any invariant fails.
    void validate() const;
};

}  // namespace keypred
