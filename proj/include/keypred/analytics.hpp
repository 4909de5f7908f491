#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keypred/scheme_params.hpp"

namespace keypred {

/// Inputs every closed form is a function of. Validation here is looser than
/// SchemeParams::validate(): f*k need not be an integer (the optimizers scan
/// f continuously) and k == L is allowed so degenerate corners can be
/// evaluated.
struct AnalyticInputs {
    uint32_t pool_size = 0;         // L
    uint32_t ring_size = 0;         // k
    double inheritance_ratio = 0.0; // f

    double x() const { return static_cast<double>(ring_size) / pool_size; }
    // Geometric decay ratio of the shared-key recurrence.
    double B() const {
        return (inheritance_ratio * pool_size - ring_size) / (static_cast<double>(pool_size) - ring_size);
    }

    static AnalyticInputs from(const SchemeParams& p) {
        return {p.pool_size, p.ring_size, p.inheritance_ratio};
    }

    void validate(bool needs_f) const;  // throws std::invalid_argument
};

/// Evaluation result with provenance metadata: the registry id of the
/// formula, whether the expression is an approximation, and whether the
/// value had to be clamped into its valid range.
struct FormulaValue {
    double value = 0.0;
    std::string formula;
    bool approximate = false;
    bool clamped = false;
};

struct ShareCountDistribution {
    Scheme scheme = Scheme::Random;
    uint32_t lid_distance = 0;
    std::vector<double> pmf;  // index = shared count, 0..k
    bool approximate = false;

    double mean() const;
    double prob_at_least(uint32_t q) const;
};

/// Result of a 1-D inheritance-ratio optimization.
struct OptimalF {
    double f = 0.0;
    double objective = 0.0;
    bool clamped = false;  // formula result fell outside [1/k, 1)
};

// log C(n, r); real-valued r supported (gamma continuation), -inf when the
// coefficient is zero.
double ln_choose(double n, double r);

// b^e for integer e >= 0, by repeated squaring; exact for e = 0 and stable
// for negative bases.
double int_pow(double b, uint32_t e);

/// Expected |ring_l cap ring_{l+d}|. TwoPhase: k(x + B^d(1-x)); Random:
/// k^2/L for any d. TwoPhaseWR has no closed form and is rejected.
FormulaValue expected_shared_keys(const AnalyticInputs& in, Scheme scheme, uint32_t lid_distance);

/// Same quantity through the recurrence X_{r+1} = X_r B + k^2(1-f)/(L-k),
/// X_0 = k; cross-check for the closed form.
double expected_shared_keys_recurrence(const AnalyticInputs& in, uint32_t lid_distance);

/// Distribution of the shared-key count at a LID distance. Random: exact
/// hypergeometric. TwoPhase: Binomial(k, x + B^d(1-x)), flagged approximate.
ShareCountDistribution share_count_pmf(const AnalyticInputs& in, Scheme scheme, uint32_t lid_distance);

/// Probability a specific key is held by an interior pair and nobody else,
/// Random scheme: (k/L)^2 (1-k/L)^{N-2}.
FormulaValue exclusivity_random(const AnalyticInputs& in, uint32_t network_size);

/// Same per-key exclusivity under TwoPhase; adjacent selects the j = i+1
/// chain, otherwise j > i+1. Requires interior positions (N >= 5 resp. 4).
FormulaValue exclusivity_two_phase(const AnalyticInputs& in, uint32_t network_size, bool adjacent);

/// Per-key exclusivity under TwoPhaseWR: IV_rand (1-f)^4 / (1 - f k/L)^{N-1}.
FormulaValue exclusivity_2pwr(const AnalyticInputs& in, uint32_t network_size);

/// f maximizing the TwoPhaseWR exclusivity: ((N-1)x - 4) / ((N-5)x), clamped
/// into [1/k, 1) and flagged when outside.
OptimalF optimal_f_2pwr(const AnalyticInputs& in, uint32_t network_size);

/// Expected number of keys of node i outside a beta-sized overlap with node l
/// that show up in node j.
double e_z_expected(const AnalyticInputs& in, uint32_t beta, uint32_t i, uint32_t j, uint32_t l);

struct PcrRandom {
    FormulaValue exact;        // pmf-based sum ("prop4-eq10")
    FormulaValue approximate;  // closed form (1 - x + x^2)^k + P_k ("prop4-eq12")
};

/// Probability that one captured ring covers everything an arbitrary pair
/// shares, Random scheme.
PcrRandom pcr_random(const AnalyticInputs& in);

struct PcrBound {
    FormulaValue eq9;   // pmf-based upper bound ("prop4-eq9")
    FormulaValue eq11;  // fully reduced closed form ("prop4-eq11")
    uint32_t offset = 0;  // LID offset t the position mapped to
    bool inside = false;  // captured node between the endpoints
};

/// Upper bound on the same probability under TwoPhase for captured LID l and
/// communicating pair (i, j). Positions map by symmetry onto an offset t,
/// outside (l = i-t or j+t) or inside (l = i+t or j-t).
PcrBound pcr_two_phase_bound(const AnalyticInputs& in, uint32_t i, uint32_t j, uint32_t l);

/// Objective whose maximum over f minimizes the reduced TwoPhase capture
/// bound; exposed for the optimizer and its grid oracle.
double pcr_objective(const AnalyticInputs& in, double f, uint32_t t, uint32_t y, bool inside);

/// Numeric argmax of pcr_objective over f in [1/k, 1), tolerance 1e-6.
OptimalF optimal_f_two_phase(const AnalyticInputs& in, uint32_t t, uint32_t y, bool inside);

/// Largest f for which the TwoPhase capture probability stays below Random:
/// x(2-x)/(1+2x). `clamped` flags an empty comparative range (bound < 1/k).
FormulaValue comparative_f_upper_bound(const AnalyticInputs& in);

struct ClusterCaptureValue {
    FormulaValue as_printed;  // 1 - (1 - PCR_{t})^M
    double complement = 0.0;  // (1 - PCR_{t})^M
};

/// Single-capture expression for a cluster of density M, evaluated with the
/// TwoPhase bound at LID offset t = ceil(N/M). The printed expression reads
/// as a vulnerability; both it and its complement are returned.
ClusterCaptureValue cluster_single_capture(const AnalyticInputs& in, uint32_t network_size, uint32_t density,
                                           uint32_t y_gap = 0);

/// Uniform-capture link vulnerability: average capture-coverage probability
/// over all candidate nodes l != i, j.
FormulaValue vc_metric(const AnalyticInputs& in, uint32_t network_size, uint32_t i, uint32_t j, Scheme scheme);

/// Key-eligibility score from a holder count: 1 when nobody else holds the
/// key, else 1/holders.
double eligibility_value(uint64_t other_holders);

}  // namespace keypred
