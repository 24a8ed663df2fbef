#pragma once

// Landauer erasure of a two-level memory against a thermal reservoir by
// slowly raising the energy gap of |1> above |0>. Covers the quasi-static
// averages (dW = p1 dE, dQ = E dp1), a stochastic raise-then-thermalize
// trajectory process refining them, the exact enumeration of its work/heat
// statistics, the Jarzynski equality <e^{-beta W}> = Z_f/Z_i, and the
// Dillenschneider-Lutz violation tail P(Q_R < ln2/beta - eps) < e^{-beta eps}.
//
// Heat is counted positive into the reservoir. Work strokes raise the gap at
// frozen occupation (left endpoint); heat strokes exchange at the new gap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <utility>
#include <vector>

#include "eraserlab/distribution.hpp"
#include "eraserlab/errors.hpp"
#include "eraserlab/rng.hpp"

namespace eraserlab::energy {

struct ThermalModel {
    double beta = 1.0;

    void validate() const {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw non_positive_beta("beta must be > 0");
    }
};

// Occupation p1 = e^{-beta E} / (1 + e^{-beta E}), stable for large beta E.
inline double thermal_occupation(double energy, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw non_positive_beta("beta must be > 0");
    const double x = beta * energy;
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

struct GapSchedule {
    std::vector<double> energies; // starts at 0, monotone non-decreasing

    std::size_t steps() const { return energies.empty() ? 0 : energies.size() - 1; }

    void validate() const {
        if (energies.empty()) throw invalid_schedule("schedule must contain at least E = 0");
        if (energies.front() != 0.0) throw invalid_schedule("schedule must start at E = 0");
        for (std::size_t i = 0; i < energies.size(); ++i) {
            if (!std::isfinite(energies[i])) throw invalid_schedule("non-finite gap value");
            if (i > 0 && energies[i] < energies[i - 1])
                throw invalid_schedule("gaps must be non-decreasing");
        }
    }

    // Default ramp: a short linear section from 0 to e_start followed by
    // geometric spacing up to e_max. Error of the left-endpoint rule is
    // O(max dE) and dominated by the geometric section.
    static GapSchedule ramp(double e_max, int steps, double e_start = 1e-3,
                            double linear_fraction = 0.1) {
        if (!(e_max > 0.0) || steps < 1) throw invalid_schedule("need e_max > 0 and steps >= 1");
        if (!(e_start > 0.0 && e_start < e_max))
            throw invalid_schedule("need 0 < e_start < e_max");
        GapSchedule s;
        s.energies.reserve(static_cast<std::size_t>(steps) + 1);
        int n_lin = std::max(1, static_cast<int>(steps * linear_fraction));
        if (n_lin >= steps) n_lin = steps - 1;
        if (n_lin < 1) { // steps == 1
            s.energies = {0.0, e_max};
            return s;
        }
        const int n_geo = steps - n_lin;
        for (int i = 0; i < n_lin; ++i)
            s.energies.push_back(e_start * static_cast<double>(i) / n_lin);
        const double ratio = std::log(e_max / e_start);
        for (int i = 0; i <= n_geo; ++i)
            s.energies.push_back(e_start * std::exp(ratio * static_cast<double>(i) / n_geo));
        s.energies.front() = 0.0;
        s.energies.back() = e_max;
        return s;
    }
};

struct QuasistaticResult {
    double work = 0.0;
    double heat_to_reservoir = 0.0;
    double error_prob = 0.0; // residual occupation of |1> at the final gap
};

// W = sum p1(E_i) dE (left endpoint), Q_R = -sum E_{i+1} dp1.
inline QuasistaticResult quasistatic_erase(const GapSchedule& schedule, const ThermalModel& model) {
    schedule.validate();
    model.validate();
    KahanSum w, q;
    double p_prev = thermal_occupation(schedule.energies.front(), model.beta);
    for (std::size_t i = 0; i + 1 < schedule.energies.size(); ++i) {
        const double e_next = schedule.energies[i + 1];
        const double p_next = thermal_occupation(e_next, model.beta);
        w.add(p_prev * (e_next - schedule.energies[i]));
        q.add(-e_next * (p_next - p_prev));
        p_prev = p_next;
    }
    return {w.value(), q.value(), p_prev};
}

struct TrajectoryRecord {
    double work = 0.0;
    double heat_to_reservoir = 0.0;
    int final_bit = 0;
};

// One stochastic run: bit starts Bernoulli(1/2); each step does work
// b * dE, then rethermalizes at the new gap, booking E_new * (b - b') of
// heat into the reservoir. Deterministic for a given seed.
inline TrajectoryRecord sample_trajectory(const GapSchedule& schedule, const ThermalModel& model,
                                          std::uint64_t seed) {
    schedule.validate();
    model.validate();
    RngStream rng(seed);
    TrajectoryRecord rec;
    int bit = rng.next_bernoulli(0.5) ? 1 : 0;
    for (std::size_t i = 0; i + 1 < schedule.energies.size(); ++i) {
        const double e_next = schedule.energies[i + 1];
        rec.work += bit * (e_next - schedule.energies[i]);
        const int bit_next = rng.next_bernoulli(thermal_occupation(e_next, model.beta)) ? 1 : 0;
        rec.heat_to_reservoir += e_next * (bit - bit_next);
        bit = bit_next;
    }
    rec.final_bit = bit;
    return rec;
}

// Batch of i.i.d. trajectories. Stream seeds are derived per trajectory
// index, so the result is identical for any worker count. Occupations are
// precomputed once; the per-run draw order matches sample_trajectory, so a
// batch entry equals the corresponding single-trajectory call bit for bit.
inline std::vector<TrajectoryRecord> sample_batch(const GapSchedule& schedule,
                                                  const ThermalModel& model, int runs,
                                                  std::uint64_t master_seed, int workers = 1) {
    schedule.validate();
    model.validate();
    if (runs < 0) throw config_invalid("runs must be >= 0");
    if (workers < 1) workers = 1;
    const std::size_t n = schedule.steps();
    std::vector<double> increment(n), gap(n), occ(n);
    for (std::size_t i = 0; i < n; ++i) {
        gap[i] = schedule.energies[i + 1];
        increment[i] = gap[i] - schedule.energies[i];
        occ[i] = thermal_occupation(gap[i], model.beta);
    }
    std::vector<TrajectoryRecord> out(static_cast<std::size_t>(runs));
    auto chunk = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            RngStream rng(derive_stream_seed(master_seed, static_cast<std::uint64_t>(i)));
            TrajectoryRecord rec;
            int bit = rng.next_bernoulli(0.5) ? 1 : 0;
            for (std::size_t s = 0; s < n; ++s) {
                rec.work += bit * increment[s];
                const int bit_next = rng.next_bernoulli(occ[s]) ? 1 : 0;
                rec.heat_to_reservoir += gap[s] * (bit - bit_next);
                bit = bit_next;
            }
            rec.final_bit = bit;
            out[static_cast<std::size_t>(i)] = rec;
        }
    };
    if (workers == 1 || runs < 2 * workers) {
        chunk(0, runs);
    } else {
        std::vector<std::future<void>> futs;
        const int per = (runs + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int b = w * per;
            const int e = std::min(runs, b + per);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, chunk, b, e));
        }
        for (auto& f : futs) f.get();
    }
    return out;
}

struct WorkHeatDistributions {
    DiscreteDistribution work;
    DiscreteDistribution heat;
};

namespace detail {

// sorted (value, weight) list; equal values share one entry
struct WeightedValues {
    std::vector<double> values;
    std::vector<double> weights;

    void reserve(std::size_t n) {
        values.reserve(n);
        weights.reserve(n);
    }
    void push(double v, double w) {
        if (!values.empty() && values.back() == v) {
            weights.back() += w;
        } else {
            values.push_back(v);
            weights.push_back(w);
        }
    }
};

// merge of (a shifted by da) and (b shifted by db), exact-equal combining
inline WeightedValues merge_shifted(const WeightedValues& a, double da, const WeightedValues& b,
                                    double db) {
    WeightedValues out;
    out.reserve(a.values.size() + b.values.size());
    std::size_t i = 0, j = 0;
    while (i < a.values.size() || j < b.values.size()) {
        const double va = i < a.values.size() ? a.values[i] + da : 1e308;
        const double vb = j < b.values.size() ? b.values[j] + db : 1e308;
        if (va <= vb) {
            out.push(va, a.weights[i]);
            ++i;
        } else {
            out.push(vb, b.weights[j]);
            ++j;
        }
    }
    return out;
}

inline WeightedValues scaled(WeightedValues v, double factor) {
    for (double& w : v.weights) w *= factor;
    return v;
}

} // namespace detail

// Exact law of (W, Q_R) under the trajectory process: a dynamic program over
// (accumulated value, current bit) that follows every one of the 2^(steps+1)
// bit paths while merging paths of equal accumulated value step by step.
// Distinct generic schedules still produce up to 2^steps support points,
// hence the step cap.
inline WorkHeatDistributions work_distribution_exact(const GapSchedule& schedule,
                                                     const ThermalModel& model) {
    schedule.validate();
    model.validate();
    const std::size_t n = schedule.steps();
    if (n > 24) throw too_many_steps("exact enumeration limited to 24 steps");

    using detail::WeightedValues;
    WeightedValues w0, w1, q0, q1; // per current-bit lists for work and heat
    w0.push(0.0, 0.5);
    w1.push(0.0, 0.5);
    q0.push(0.0, 0.5);
    q1.push(0.0, 0.5);

    for (std::size_t i = 0; i < n; ++i) {
        const double gap = schedule.energies[i + 1];
        const double inc = gap - schedule.energies[i];
        const double p = thermal_occupation(gap, model.beta);

        // work: a set bit pays the increment, then rethermalizes
        WeightedValues w_union = detail::merge_shifted(w0, 0.0, w1, inc);
        w0 = detail::scaled(w_union, 1.0 - p);
        w1 = detail::scaled(std::move(w_union), p);

        // heat to reservoir: gap * (bit - bit') at the new gap
        WeightedValues q0_next = detail::merge_shifted(q0, 0.0, q1, gap);
        WeightedValues q1_next = detail::merge_shifted(q0, -gap, q1, 0.0);
        q0 = detail::scaled(std::move(q0_next), 1.0 - p);
        q1 = detail::scaled(std::move(q1_next), p);
    }

    WeightedValues w_total = detail::merge_shifted(w0, 0.0, w1, 0.0);
    WeightedValues q_total = detail::merge_shifted(q0, 0.0, q1, 0.0);
    WorkHeatDistributions out;
    out.work.values = std::move(w_total.values);
    out.work.probs = std::move(w_total.weights);
    out.heat.values = std::move(q_total.values);
    out.heat.probs = std::move(q_total.weights);
    return out;
}

// <e^{-beta W}> - Z_f/Z_i. Zero (to rounding) for any schedule under the
// full-thermalization process.
inline double jarzynski_check(const DiscreteDistribution& work_dist, double beta, double z_ratio) {
    work_dist.validate();
    if (!(beta > 0.0)) throw non_positive_beta("beta must be > 0");
    if (!(z_ratio > 0.0)) throw config_invalid("Z_f/Z_i must be > 0");
    return work_dist.exp_moment(-beta) - z_ratio;
}

struct TailCheck {
    double probability = 0.0;
    double bound = 0.0;
};

// P(Q_R < ln2/beta - eps) against the Dillenschneider-Lutz envelope
// e^{-beta eps}.
inline TailCheck landauer_violation_tail(const DiscreteDistribution& heat_dist, double beta,
                                         double eps) {
    heat_dist.validate();
    if (!(beta > 0.0)) throw non_positive_beta("beta must be > 0");
    if (eps < 0.0) throw config_invalid("eps must be >= 0");
    TailCheck out;
    out.probability = heat_dist.prob_less(std::log(2.0) / beta - eps);
    out.bound = std::exp(-eps * beta);
    return out;
}

// Z(E) = 1 + e^{-beta E} for the two-level system.
inline double partition_function(double energy, double beta) {
    return 1.0 + std::exp(-beta * energy);
}

} // namespace eraserlab::energy
