#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "eraserlab/errors.hpp"

namespace eraserlab {

// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double x) {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// Probability mass function over a finite set of real outcome values.
// values are strictly increasing, probs nonnegative and normalized.
struct DiscreteDistribution {
    std::vector<double> values;
    std::vector<double> probs;

    void validate(double norm_tol = 1e-12) const {
        if (values.size() != probs.size())
            throw length_mismatch("values and probs differ in length");
        KahanSum s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(std::isfinite(values[i])))
                throw unnormalized_distribution("non-finite outcome value");
            if (!(probs[i] >= 0.0))
                throw unnormalized_distribution("negative probability");
            if (i > 0 && !(values[i] > values[i - 1]))
                throw unnormalized_distribution("values not strictly increasing");
            s.add(probs[i]);
        }
        if (std::abs(s.value() - 1.0) > norm_tol)
            throw unnormalized_distribution("probabilities sum to " + std::to_string(s.value()));
    }

    // Build from (value, weight) points, merging values that coincide within
    // merge_tol (absolute). Weights must already sum to ~1; per-value weights
    // are accumulated with compensated summation.
    static DiscreteDistribution from_weighted(std::vector<std::pair<double, double>> pts,
                                              double merge_tol = 0.0) {
        std::sort(pts.begin(), pts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        DiscreteDistribution d;
        std::vector<KahanSum> acc;
        for (const auto& [v, w] : pts) {
            if (!d.values.empty() && v - d.values.back() <= merge_tol) {
                acc.back().add(w);
            } else {
                d.values.push_back(v);
                acc.emplace_back();
                acc.back().add(w);
            }
        }
        d.probs.reserve(acc.size());
        for (const auto& a : acc) d.probs.push_back(a.value());
        return d;
    }

    double mean() const {
        KahanSum s;
        for (std::size_t i = 0; i < values.size(); ++i) s.add(values[i] * probs[i]);
        return s.value();
    }

    // <exp(s X)>
    double exp_moment(double s) const {
        KahanSum acc;
        for (std::size_t i = 0; i < values.size(); ++i)
            acc.add(probs[i] * std::exp(s * values[i]));
        return acc.value();
    }

    // P[X <= t]
    double prob_leq(double t) const {
        KahanSum acc;
        for (std::size_t i = 0; i < values.size() && values[i] <= t; ++i) acc.add(probs[i]);
        return acc.value();
    }

    // P[X < t]
    double prob_less(double t) const {
        KahanSum acc;
        for (std::size_t i = 0; i < values.size() && values[i] < t; ++i) acc.add(probs[i]);
        return acc.value();
    }
};

} // namespace eraserlab
