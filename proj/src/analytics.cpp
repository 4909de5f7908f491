#include "keypred/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace keypred {

namespace {

FormulaValue clamp01(double v, std::string formula, bool approximate) {
    FormulaValue out;
    out.formula = std::move(formula);
    out.approximate = approximate;
    if (v < 0.0) { out.value = 0.0; out.clamped = true; }
    else if (v > 1.0) { out.value = 1.0; out.clamped = true; }
    else out.value = v;
    return out;
}

}  // namespace

void AnalyticInputs::validate(bool needs_f) const {
    if (ring_size < 1) throw std::invalid_argument("ring_size must be >= 1");
    if (pool_size < ring_size) throw std::invalid_argument("pool_size must be >= ring_size");
    if (needs_f) {
        if (pool_size == ring_size) throw std::invalid_argument("inheritance formulas need k < L");
        const double fmin = 1.0 / ring_size;
        if (inheritance_ratio < fmin - 1e-12 || inheritance_ratio >= 1.0)
            throw std::invalid_argument("inheritance_ratio must satisfy 1/k <= f < 1");
    }
}

double ln_choose(double n, double r) {
    if (r < 0.0 || n < 0.0 || r > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double int_pow(double b, uint32_t e) {
    double acc = 1.0;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

double ShareCountDistribution::mean() const {
    double m = 0.0;
    for (size_t b = 1; b < pmf.size(); ++b) m += static_cast<double>(b) * pmf[b];
    return m;
}

double ShareCountDistribution::prob_at_least(uint32_t q) const {
    double p = 0.0;
    for (size_t b = q; b < pmf.size(); ++b) p += pmf[b];
    return p;
}

FormulaValue expected_shared_keys(const AnalyticInputs& in, Scheme scheme, uint32_t d) {
    FormulaValue out;
    out.formula = "prop1";
    switch (scheme) {
        case Scheme::Random:
            in.validate(false);
            out.value = in.x() * in.ring_size;
            return out;
        case Scheme::TwoPhase: {
            in.validate(true);
            const double x = in.x();
            out.value = in.ring_size * (x + int_pow(in.B(), d) * (1.0 - x));
            return out;
        }
        case Scheme::TwoPhaseWR:
            throw std::domain_error("no closed-form expected shared keys for two-phase-wr; estimate it");
    }
    throw std::invalid_argument("unknown scheme");
}

double expected_shared_keys_recurrence(const AnalyticInputs& in, uint32_t d) {
    in.validate(true);
    const double k = in.ring_size;
    const double L = in.pool_size;
    const double f = in.inheritance_ratio;
    const double ratio = in.B();
    const double inflow = k * k * (1.0 - f) / (L - k);
    double value = k;
    for (uint32_t r = 0; r < d; ++r) value = value * ratio + inflow;
    return value;
}

ShareCountDistribution share_count_pmf(const AnalyticInputs& in, Scheme scheme, uint32_t d) {
    if (d < 1) throw std::invalid_argument("lid_distance must be >= 1");
    const uint32_t k = in.ring_size;
    const uint32_t L = in.pool_size;
    ShareCountDistribution dist;
    dist.scheme = scheme;
    dist.lid_distance = d;
    dist.pmf.assign(k + 1, 0.0);

    if (scheme == Scheme::Random) {
        in.validate(false);
        // Overlap of two uniform k-subsets of [0, L).
        for (uint32_t b = 0; b <= k; ++b) {
            const double ln = ln_choose(k, b) + ln_choose(L - k, k - b) - ln_choose(L, k);
            if (std::isfinite(ln)) dist.pmf[b] = std::exp(ln);
        }
        return dist;
    }
    if (scheme != Scheme::TwoPhase)
        throw std::domain_error("no closed-form share distribution for two-phase-wr");

    in.validate(true);
    dist.approximate = true;
    const double x = in.x();
    const double p = std::clamp(x + int_pow(in.B(), d) * (1.0 - x), 0.0, 1.0);
    if (p == 0.0) { dist.pmf[0] = 1.0; return dist; }
    if (p == 1.0) { dist.pmf[k] = 1.0; return dist; }
    const double lp = std::log(p), lq = std::log1p(-p);
    for (uint32_t b = 0; b <= k; ++b)
        dist.pmf[b] = std::exp(ln_choose(k, b) + b * lp + (k - b) * lq);
    return dist;
}

FormulaValue exclusivity_random(const AnalyticInputs& in, uint32_t n) {
    in.validate(false);
    if (n < 2) throw std::invalid_argument("network_size must be >= 2");
    const double x = in.x();
    return clamp01(x * x * int_pow(1.0 - x, n - 2), "prop2-eq1", false);
}

FormulaValue exclusivity_two_phase(const AnalyticInputs& in, uint32_t n, bool adjacent) {
    in.validate(true);
    const uint32_t n_min = adjacent ? 4 : 5;
    if (n < n_min)
        throw std::domain_error("network too small for the exclusivity chain exponent");
    const double x = in.x();
    const double f = in.inheritance_ratio;
    const double miss = 1.0 - x * (1.0 - f) / (1.0 - x);  // node lacks the key given predecessor lacks it
    double v;
    if (adjacent)
        v = (1.0 - f) * (1.0 - f) * f * x * int_pow(miss, n - 4);
    else
        v = int_pow(1.0 - f, 4) / (1.0 - x) * x * x * int_pow(miss, n - 5);
    return clamp01(v, adjacent ? "prop2-eq3" : "prop2-eq2", false);
}

FormulaValue exclusivity_2pwr(const AnalyticInputs& in, uint32_t n) {
    in.validate(true);
    if (n < 2) throw std::invalid_argument("network_size must be >= 2");
    const double x = in.x();
    const double f = in.inheritance_ratio;
    const double iv_rand = x * x * int_pow(1.0 - x, n - 2);
    const double v = iv_rand * int_pow(1.0 - f, 4) / int_pow(1.0 - f * x, n - 1);
    return clamp01(v, "prop3-eq4", false);
}

OptimalF optimal_f_2pwr(const AnalyticInputs& in, uint32_t n) {
    AnalyticInputs base = in;
    base.inheritance_ratio = 0.5;  // f is the unknown here
    base.validate(true);
    const double x = base.x();
    if (n <= 5 || (n - 5) * x <= 0.0) throw std::domain_error("need N > 5 for the optimal-f expression");
    OptimalF out;
    out.f = ((n - 1) * x - 4.0) / ((n - 5) * x);
    const double fmin = 1.0 / base.ring_size;
    if (out.f < fmin) { out.f = fmin; out.clamped = true; }
    AnalyticInputs at = base;
    at.inheritance_ratio = out.f;
    out.objective = exclusivity_2pwr(at, n).value;
    return out;
}

double e_z_expected(const AnalyticInputs& in, uint32_t beta, uint32_t i, uint32_t j, uint32_t l) {
    in.validate(true);
    if (beta >= in.ring_size) throw std::domain_error("beta must be < k");
    if (j <= i) throw std::domain_error("need j > i");
    const double x = in.x();
    const double rem = in.ring_size - beta;
    if (l < i) return rem * (x + int_pow(in.B(), j - i) * (1.0 - x));
    const uint32_t half = i + (j - i + 1) / 2;
    if (l > i && l <= half) return rem * x * (1.0 - int_pow(in.B(), j - l));
    throw std::domain_error("captured position outside the covered ranges");
}

PcrRandom pcr_random(const AnalyticInputs& in) {
    in.validate(false);
    const uint32_t k = in.ring_size;
    const uint32_t L = in.pool_size;
    const auto pmf = share_count_pmf(in, Scheme::Random, 1).pmf;

    double sum = 0.0;
    for (uint32_t b = 0; b <= k; ++b) {
        if (pmf[b] == 0.0) continue;
        // probability a fresh ring avoids the k - b uncovered keys
        sum += pmf[b] * std::exp(ln_choose(L - k + b, k) - ln_choose(L, k));
    }
    PcrRandom out;
    out.exact = clamp01(pmf[k] + sum, "prop4-eq10", false);
    const double x = in.x();
    out.approximate = clamp01(pmf[k] + std::pow(1.0 - x + x * x, static_cast<double>(k)), "prop4-eq12", true);
    return out;
}

namespace {

struct MappedPosition {
    uint32_t t;
    bool inside;
};

MappedPosition map_captured_position(uint32_t i, uint32_t j, uint32_t l) {
    if (i < 1 || j <= i) throw std::domain_error("need 1 <= i < j");
    if (l == i || l == j || l < 1) throw std::domain_error("captured node must differ from the endpoints");
    if (l < i) return {i - l, false};
    if (l > j) return {l - j, false};
    // interior positions fold onto the nearer endpoint by symmetry
    return {std::min(l - i, j - l), true};
}

double pcr_bound_eq9(const AnalyticInputs& in, uint32_t t, uint32_t y, bool inside) {
    const uint32_t k = in.ring_size;
    const uint32_t L = in.pool_size;
    const double x = in.x();
    const double f = in.inheritance_ratio;
    const double B = in.B();
    const double fk = f * k;

    const auto pmf = share_count_pmf(in, Scheme::TwoPhase, t).pmf;
    // per-key presence probability of an uncovered key in node j's predecessor
    const double p = inside ? (1.0 - int_pow(B, y - t)) * x : x + int_pow(B, y) * (1.0 - x);

    const double ln_denom = ln_choose(static_cast<double>(L) - k, k - fk);
    double sum = 0.0;
    for (uint32_t b = 0; b <= k; ++b) {
        if (pmf[b] == 0.0) continue;
        const double ln_ratio = ln_choose(static_cast<double>(L) - 2.0 * k + b, k - fk) - ln_denom;
        if (!std::isfinite(ln_ratio)) continue;
        sum += pmf[b] * std::exp(ln_ratio) * std::pow(1.0 - f * p, static_cast<double>(k - b));
    }
    return pmf[k] + sum;
}

double pcr_bound_eq11(const AnalyticInputs& in, double f, uint32_t t, uint32_t y, bool inside, double& p_share) {
    const double x = in.x();
    const double k = in.ring_size;
    AnalyticInputs at = in;
    at.inheritance_ratio = f;
    const double B = at.B();
    p_share = x + int_pow(B, t) * (1.0 - x);
    const double g = pcr_objective(in, f, t, y, inside);
    return std::pow(p_share, k) + std::pow(1.0 - g, k);
}

}  // namespace

double pcr_objective(const AnalyticInputs& in, double f, uint32_t t, uint32_t y, bool inside) {
    const double x = in.x();
    AnalyticInputs at = in;
    at.inheritance_ratio = f;
    const double B = at.B();
    const double common = x * (1.0 - int_pow(B, t)) * (1.0 - x * (2.0 * f - f * f));
    if (inside)
        return common - f * int_pow(B, y - t) * (1.0 + f * x - 2.0 * x);
    return common + f * (1.0 - int_pow(B, t)) * int_pow(B, y) * (1.0 + f * x - 2.0 * x) * (1.0 - x);
}

PcrBound pcr_two_phase_bound(const AnalyticInputs& in, uint32_t i, uint32_t j, uint32_t l) {
    in.validate(true);
    const auto pos = map_captured_position(i, j, l);
    const uint32_t y = j - i;
    PcrBound out;
    out.offset = pos.t;
    out.inside = pos.inside;
    out.eq9 = clamp01(pcr_bound_eq9(in, pos.t, y, pos.inside), "prop4-eq9", true);
    double p_share = 0.0;
    out.eq11 = clamp01(pcr_bound_eq11(in, in.inheritance_ratio, pos.t, y, pos.inside, p_share), "prop4-eq11", true);
    return out;
}

OptimalF optimal_f_two_phase(const AnalyticInputs& in, uint32_t t, uint32_t y, bool inside) {
    AnalyticInputs base = in;
    base.inheritance_ratio = 0.5;
    base.validate(true);
    if (t < 1 || y < 1 || (inside && t > (y + 1) / 2))
        throw std::domain_error("offset outside the covered ranges");

    const double lo = 1.0 / base.ring_size;
    const double hi = 1.0 - 1e-9;
    auto obj = [&](double f) { return pcr_objective(base, f, t, y, inside); };

    // coarse scan, then golden-section inside the bracketing cell
    const int cells = 2000;
    double best_f = lo, best_v = obj(lo);
    for (int c = 1; c <= cells; ++c) {
        const double f = lo + (hi - lo) * c / cells;
        const double v = obj(f);
        if (v > best_v) { best_v = v; best_f = f; }
    }
    const double step = (hi - lo) / cells;
    double a = std::max(lo, best_f - step);
    double b = std::min(hi, best_f + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = obj(c), fd = obj(d);
    while (b - a > 1e-7) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = obj(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = obj(d);
        }
    }
    OptimalF out;
    out.f = 0.5 * (a + b);
    if (obj(lo) >= obj(out.f)) out.f = lo;  // boundary maximum
    out.objective = obj(out.f);
    return out;
}

FormulaValue comparative_f_upper_bound(const AnalyticInputs& in) {
    in.validate(false);
    const double x = in.x();
    FormulaValue out;
    out.formula = "prop6-bound";
    out.value = x * (2.0 - x) / (1.0 + 2.0 * x);
    if (out.value < 1.0 / in.ring_size) out.clamped = true;  // empty comparative range
    return out;
}

ClusterCaptureValue cluster_single_capture(const AnalyticInputs& in, uint32_t n, uint32_t density,
                                           uint32_t y_gap) {
    in.validate(true);
    if (density < 2) throw std::invalid_argument("density must be >= 2");
    const auto t = static_cast<uint32_t>((n + density - 1) / density);  // expected LID gap to the nearest cluster node
    const uint32_t y = y_gap == 0 ? t : y_gap;
    const double pcr = clamp01(pcr_bound_eq9(in, t, y, false), "prop4-eq9", true).value;
    ClusterCaptureValue out;
    const double complement = std::pow(1.0 - pcr, static_cast<double>(density));
    out.as_printed = clamp01(1.0 - complement, "prop7", true);
    out.complement = complement;
    return out;
}

FormulaValue vc_metric(const AnalyticInputs& in, uint32_t n, uint32_t i, uint32_t j, Scheme scheme) {
    if (n < 3) throw std::invalid_argument("network_size must be >= 3");
    if (i < 1 || j <= i || j > n) throw std::invalid_argument("need 1 <= i < j <= N");
    if (scheme == Scheme::Random) {
        auto v = pcr_random(in).exact;
        v.formula = "prop8-vc";
        return v;
    }
    if (scheme != Scheme::TwoPhase) throw std::domain_error("vc_metric covers random and two-phase only");
    in.validate(true);
    const uint32_t y = j - i;
    double sum = 0.0;
    bool clamped = false;
    for (uint32_t l = 1; l <= n; ++l) {
        if (l == i || l == j) continue;
        const auto pos = map_captured_position(i, j, l);
        const auto v = clamp01(pcr_bound_eq9(in, pos.t, y, pos.inside), "prop4-eq9", true);
        clamped = clamped || v.clamped;
        sum += v.value;
    }
    auto out = clamp01(sum / (n - 2), "prop8-vc", true);
    out.clamped = out.clamped || clamped;
    return out;
}

double eligibility_value(uint64_t other_holders) {
    return other_holders == 0 ? 1.0 : 1.0 / static_cast<double>(other_holders);
}

}  // namespace keypred
