#pragma once

// Erasure against a spin reservoir by raising the J_z eigenvalue gap of the
// information-carrying pair in steps of hbar. The spinlabor cost is a sum of
// independent Bernoulli contributions on the lattice {0, hbar, 2 hbar, ...}:
// the first raise acts on the maximally mixed memory (probability 1/2), and
// the raise to gap (n+1) hbar acts on the occupation equilibrated at gap
// n hbar for n >= 2, i.e.
//
//     L_s / hbar = b0 + sum_{n>=2} b_n,   b0 ~ B(1/2),  b_n ~ B(f_n),
//     f_n = e^{-gamma n hbar} / (1 + e^{-gamma n hbar}).
//
// This ordering is fixed by the Jarzynski-like equality
// <e^{-gamma L_s + ln 2}> = (1 + e^{-gamma hbar}) / (1 + e^{-2 gamma hbar}),
// whose right side the Bernoulli product reproduces exactly by telescoping;
// thermalizing at the old gap instead would give 1 and is rejected.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "eraserlab/distribution.hpp"
#include "eraserlab/errors.hpp"
#include "eraserlab/rng.hpp"

namespace eraserlab::spin {

struct SpinReservoir {
    double gamma = 1.0; // inverse spin temperature
    double hbar = 1.0;  // angular momentum quantum

    void validate() const {
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw invalid_reservoir("gamma must be > 0");
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw invalid_reservoir("hbar must be > 0");
        if (!std::isfinite(gamma * hbar))
            throw invalid_reservoir("gamma * hbar must be finite");
    }
};

enum class ResetConvention { reset_low, reset_high };

struct SpinProtocolConfig {
    SpinReservoir reservoir;
    double truncation_tol = 1e-15;
    ResetConvention reset = ResetConvention::reset_low;

    void validate() const {
        reservoir.validate();
        if (!(truncation_tol > 0.0 && truncation_tol < 1.0))
            throw invalid_protocol_config("truncation_tol must be in (0, 1)");
    }
};

// Equilibrium occupation of the upper state at gap n hbar.
inline double step_occupation(int n, const SpinReservoir& reservoir) {
    reservoir.validate();
    if (n < 1) throw invalid_n("n must be >= 1");
    const double x = reservoir.gamma * reservoir.hbar * n;
    const double e = std::exp(-x);
    return e / (1.0 + e);
}

namespace detail {

// Bernoulli success probabilities of the protocol: 1/2, f_2, f_3, ...
// truncated at the first f_n below tol.
inline std::vector<double> bernoulli_factors(const SpinProtocolConfig& config) {
    std::vector<double> probs{0.5};
    for (int n = 2;; ++n) {
        const double f = step_occupation(n, config.reservoir);
        if (f < config.truncation_tol) break;
        probs.push_back(f);
    }
    return probs;
}

} // namespace detail

struct SpinlaborDistribution {
    DiscreteDistribution dist; // values m * hbar, m = 0..factors
    double gamma = 0.0;
    double hbar = 1.0;
    int factors = 0;            // number of Bernoulli factors kept
    double tail_mean_bound = 0.0;       // bound on the mean left in the truncated tail
    double tail_exp_moment_bound = 0.0; // bound on |<e^{-gamma L}> error| from truncation

    double mean() const { return dist.mean(); }
};

// Exact PMF by convolution of the Bernoulli factors.
inline SpinlaborDistribution exact_spinlabor_distribution(const SpinProtocolConfig& config) {
    config.validate();
    const auto probs = detail::bernoulli_factors(config);
    const double gh = config.reservoir.gamma * config.reservoir.hbar;

    std::vector<double> pmf{1.0};
    for (const double q : probs) {
        std::vector<double> next(pmf.size() + 1, 0.0);
        for (std::size_t m = 0; m < pmf.size(); ++m) {
            next[m] += pmf[m] * (1.0 - q);
            next[m + 1] += pmf[m] * q;
        }
        pmf = std::move(next);
    }

    SpinlaborDistribution out;
    out.gamma = config.reservoir.gamma;
    out.hbar = config.reservoir.hbar;
    out.factors = static_cast<int>(probs.size());
    out.dist.values.resize(pmf.size());
    out.dist.probs = std::move(pmf);
    for (std::size_t m = 0; m < out.dist.values.size(); ++m)
        out.dist.values[m] = static_cast<double>(m) * config.reservoir.hbar;

    // Omitted factors n = N+1, N+2, ... have f_n <= e^{-gamma hbar n}; their
    // contribution to the mean is below hbar * e^{-gh (N+1)} / (1 - e^{-gh}),
    // and the truncated exponential moment telescopes to within
    // 2 e^{-gh (N+1)} of the infinite product.
    const int next_n = out.factors + 1;
    const double r = std::exp(-gh);
    out.tail_mean_bound =
        config.reservoir.hbar * std::exp(-gh * next_n) / (1.0 - r);
    out.tail_exp_moment_bound = 2.0 * std::exp(-gh * next_n);
    return out;
}

// I.i.d. trajectory samples of L_s; one derived stream per run, so output is
// independent of any worker partitioning.
inline std::vector<double> sample_spinlabor(const SpinProtocolConfig& config, int runs,
                                            std::uint64_t seed) {
    config.validate();
    if (runs < 1) throw config_invalid("runs must be >= 1");
    const auto probs = detail::bernoulli_factors(config);
    std::vector<double> out(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        RngStream rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
        int m = 0;
        for (const double q : probs) m += rng.next_bernoulli(q) ? 1 : 0;
        out[static_cast<std::size_t>(i)] = static_cast<double>(m) * config.reservoir.hbar;
    }
    return out;
}

struct JarzynskiLikeResult {
    double lhs = 0.0;      // <e^{-gamma L_s + ln 2}>
    double expected = 0.0; // A = (1 + e^{-gamma hbar}) / (1 + e^{-2 gamma hbar})
};

inline JarzynskiLikeResult jarzynski_like_check(const SpinlaborDistribution& dist,
                                                const SpinReservoir& reservoir) {
    reservoir.validate();
    if (dist.gamma != reservoir.gamma || dist.hbar != reservoir.hbar)
        throw mismatched_gamma("distribution was generated for a different reservoir");
    JarzynskiLikeResult out;
    out.lhs = 2.0 * dist.dist.exp_moment(-reservoir.gamma);
    const double r = std::exp(-reservoir.gamma * reservoir.hbar);
    out.expected = (1.0 + r) / (1.0 + r * r);
    return out;
}

struct SpinTailResult {
    double probability = 0.0;        // P(L_s <= ln2/gamma - eps)
    double bound_exponential = 0.0;  // A e^{-gamma eps}
    std::optional<double> bound_tight; // C e^{-sqrt(gamma/hbar) eps} when hbar gamma < 1
};

inline SpinTailResult violation_tail(const SpinlaborDistribution& dist,
                                     const SpinReservoir& reservoir, double eps) {
    reservoir.validate();
    if (dist.gamma != reservoir.gamma || dist.hbar != reservoir.hbar)
        throw mismatched_gamma("distribution was generated for a different reservoir");
    if (eps < 0.0) throw config_invalid("eps must be >= 0");
    const double threshold = std::log(2.0) / reservoir.gamma;
    SpinTailResult out;
    out.probability = dist.dist.prob_leq(threshold - eps);
    const double r = std::exp(-reservoir.gamma * reservoir.hbar);
    const double a = (1.0 + r) / (1.0 + r * r);
    out.bound_exponential = a * std::exp(-reservoir.gamma * eps);
    if (reservoir.gamma * reservoir.hbar < 1.0) {
        const double c = dist.dist.prob_leq(threshold);
        out.bound_tight = c * std::exp(-std::sqrt(reservoir.gamma / reservoir.hbar) * eps);
    }
    return out;
}

struct SpinFirstLawLedger {
    double spinlabor = 0.0;
    double spintherm_to_reservoir = 0.0;
    double memory_jz_change = 0.0; // +hbar/2 or -hbar/2

    void validate() const {
        const double residual =
            spintherm_to_reservoir - (spinlabor - memory_jz_change);
        if (residual != 0.0) throw config_invalid("ledger identity violated");
    }
};

// First-law bookkeeping for J_z: Q_s = L_s - delta<J_z>_M with no spinlabor
// on the reservoir and no spintherm leaving the combined system. reset_high
// moves the memory to the upper eigenstate (Q_s = L_s - hbar/2); reset_low
// to the lower one (Q_s = L_s + hbar/2).
inline SpinFirstLawLedger first_law_ledger(double spinlabor, const SpinProtocolConfig& config) {
    config.validate();
    if (!(spinlabor >= 0.0)) throw config_invalid("spinlabor must be >= 0");
    SpinFirstLawLedger ledger;
    ledger.spinlabor = spinlabor;
    const double half = 0.5 * config.reservoir.hbar;
    ledger.memory_jz_change = (config.reset == ResetConvention::reset_high) ? half : -half;
    ledger.spintherm_to_reservoir = spinlabor - ledger.memory_jz_change;
    return ledger;
}

} // namespace eraserlab::spin
