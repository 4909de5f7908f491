#include "keypred/scheme_params.hpp"

#include <cmath>
#include <stdexcept>

namespace keypred {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Random: return "random";
        case Scheme::TwoPhase: return "two-phase";
        case Scheme::TwoPhaseWR: return "two-phase-wr";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "random") return Scheme::Random;
    if (name == "two-phase") return Scheme::TwoPhase;
    if (name == "two-phase-wr" || name == "2pwr") return Scheme::TwoPhaseWR;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected random, two-phase or two-phase-wr)");
}

uint32_t SchemeParams::inherited_count() const {
    return static_cast<uint32_t>(std::llround(inheritance_ratio * ring_size));
}

void SchemeParams::validate() const {
    if (network_size < 1) throw std::invalid_argument("network_size must be >= 1");
    if (ring_size < 1) throw std::invalid_argument("ring_size must be >= 1");
    if (ring_size > pool_size) throw std::invalid_argument("ring_size must not exceed pool_size");
    if (!uses_inheritance()) return;

    if (ring_size >= pool_size)
        throw std::invalid_argument("inheritance schemes need ring_size < pool_size");
    const double f = inheritance_ratio;
    const double k = ring_size;
    if (f < 1.0 / k - 1e-12 || f >= 1.0)
        throw std::invalid_argument("inheritance_ratio must satisfy 1/k <= f < 1");
    const double fk = f * k;
    if (std::abs(fk - std::llround(fk)) > 1e-9)
        throw std::invalid_argument("inheritance_ratio * ring_size must be an integer draw count");

    const auto ik = static_cast<uint32_t>(std::llround(fk));
    const uint32_t fresh = ring_size - ik;
    // Phase 2 must be able to fill the ring from the reduced pool.
    const uint32_t excluded = scheme == Scheme::TwoPhase ? ring_size : ik;
    if (fresh > pool_size - excluded)
        throw std::invalid_argument("pool too small for the non-inherited phase-2 draws");
}

}  // namespace keypred
