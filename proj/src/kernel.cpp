#include "hawkes/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

// Descending-magnitude summation; stable under permutation of the input.
double ordered_sum(std::vector<double> values) {
    std::sort(values.begin(), values.end(),
              [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc;
}

} // namespace

ExcitationKernel::ExcitationKernel(std::vector<double> weights,
                                   double truncation_error)
    : weights_(std::move(weights)), truncation_error_(truncation_error) {
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("kernel weights must be >= 0");
        }
    }
    l1_norm_ = ordered_sum(weights_);
}

ExcitationKernel ExcitationKernel::from_weights(std::vector<double> weights) {
    return ExcitationKernel(std::move(weights), 0.0);
}

ExcitationKernel ExcitationKernel::geometric(double a, double r,
                                             std::size_t K) {
    if (!(a >= 0.0) || !(r >= 0.0) || !(r < 1.0)) {
        throw std::invalid_argument("geometric kernel needs a >= 0, 0 <= r < 1");
    }
    std::vector<double> w(K);
    double term = a;
    for (std::size_t t = 0; t < K; ++t) {
        w[t] = term;
        term *= r;
    }
    const double tail = a * std::pow(r, static_cast<double>(K)) / (1.0 - r);
    return ExcitationKernel(std::move(w), tail);
}

ExcitationKernel ExcitationKernel::power(double a, double p, std::size_t K) {
    if (!(a >= 0.0) || !(p > 1.0)) {
        throw std::invalid_argument("power kernel needs a >= 0, p > 1");
    }
    std::vector<double> w(K);
    for (std::size_t t = 0; t < K; ++t) {
        w[t] = a * std::pow(static_cast<double>(t + 1), -p);
    }
    // integral bound on sum_{t>K} a t^{-p}
    const double tail =
        a * std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0);
    return ExcitationKernel(std::move(w), K > 0 ? tail : a / (p - 1.0));
}

double ExcitationKernel::clt_tail_statistic(long t) const {
    if (t < 1) {
        throw std::invalid_argument("clt_tail_statistic needs t >= 1");
    }
    // suffix[u] = sum_{s=u+1}^{K} alpha(s), exact for finite support
    const long K = static_cast<long>(weights_.size());
    double acc = 0.0;
    for (long u = 1; u <= t - 1; ++u) {
        if (u >= K) {
            break;
        }
        for (long s = u + 1; s <= K; ++s) {
            acc += weights_[static_cast<std::size_t>(s - 1)];
        }
    }
    return acc / std::sqrt(static_cast<double>(t));
}

double stability_margin(const ExcitationKernel& kernel,
                        const MarkDistribution& marks) {
    return 1.0 - kernel.l1_norm() * marks.mean();
}

} // namespace hawkes
