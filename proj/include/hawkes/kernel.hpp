#pragma once

#include <cstddef>
#include <vector>

#include "hawkes/marks.hpp"

namespace hawkes {

// Excitation weights alpha(1..K) on the positive integers. Infinite-tail
// families are truncated at construction with a recorded error bound on
// the l1 norm.
class ExcitationKernel {
public:
    static ExcitationKernel from_weights(std::vector<double> weights);

    // alpha(t) = a * r^{t-1}, truncated at K terms.
    static ExcitationKernel geometric(double a, double r, std::size_t K);

    // alpha(t) = a * t^{-p}, truncated at K terms.
    static ExcitationKernel power(double a, double p, std::size_t K);

    const std::vector<double>& weights() const { return weights_; }
    std::size_t support() const { return weights_.size(); }

    double l1_norm() const { return l1_norm_; }
    double truncation_error() const { return truncation_error_; }

    // (1/sqrt(t)) * sum_{u=1}^{t-1} sum_{s=u+1}^{K} alpha(s); the CLT
    // side condition asks this to vanish as t grows.
    double clt_tail_statistic(long t) const;

private:
    ExcitationKernel(std::vector<double> weights, double truncation_error);

    std::vector<double> weights_;
    double l1_norm_;
    double truncation_error_;
};

// 1 - |alpha|_1 * E[l]; positive iff the subcriticality assumption holds.
double stability_margin(const ExcitationKernel& kernel,
                        const MarkDistribution& marks);

} // namespace hawkes
