#include "hawkes/marks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rising_factorial(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= a + static_cast<double>(i);
    }
    return r;
}

} // namespace

MarkDistribution MarkDistribution::constant(double value) {
    if (!(value > 0.0)) {
        throw std::invalid_argument("constant mark must be positive");
    }
    return MarkDistribution(Constant{value});
}

MarkDistribution MarkDistribution::exponential_rate(double beta) {
    if (!(beta > 0.0)) {
        throw std::invalid_argument("exponential rate must be positive");
    }
    return MarkDistribution(ExponentialRate{beta});
}

MarkDistribution MarkDistribution::gamma_shape_scale(double shape,
                                                     double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument(
            "gamma shape and scale must be positive");
    }
    return MarkDistribution(GammaShapeScale{shape, scale});
}

MarkDistribution MarkDistribution::discrete(std::vector<double> values,
                                            std::vector<double> probs) {
    if (values.empty() || values.size() != probs.size()) {
        throw std::invalid_argument(
            "discrete marks need matching non-empty values/probs");
    }
    for (double v : values) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("discrete mark values must be positive");
        }
    }
    std::unordered_set<double> seen(values.begin(), values.end());
    if (seen.size() != values.size()) {
        throw std::invalid_argument("discrete mark values must be distinct");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) {
            throw std::invalid_argument("discrete mark probs must be >= 0");
        }
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "discrete mark probs sum to " + std::to_string(total) +
            ", expected 1 within 1e-12");
    }
    for (double& p : probs) {
        p /= total;
    }
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    cdf.back() = 1.0;
    return MarkDistribution(
        DiscreteFinite{std::move(values), std::move(probs), std::move(cdf)});
}

double MarkDistribution::mgf_domain_sup() const {
    return std::visit(
        [](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, ExponentialRate>) {
                return law.beta;
            } else if constexpr (std::is_same_v<T, GammaShapeScale>) {
                return 1.0 / law.scale;
            } else {
                return kInf;
            }
        },
        law_);
}

void MarkDistribution::require_in_domain(double s) const {
    const double sup = mgf_domain_sup();
    if (!(s < sup)) {
        throw DomainError("MGF argument " + std::to_string(s) +
                          " is outside the domain (sup = " +
                          std::to_string(sup) + ")");
    }
}

double MarkDistribution::mgf(double s) const {
    require_in_domain(s);
    return std::visit(
        [s](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return std::exp(s * law.value);
            } else if constexpr (std::is_same_v<T, ExponentialRate>) {
                return law.beta / (law.beta - s);
            } else if constexpr (std::is_same_v<T, GammaShapeScale>) {
                return std::pow(1.0 - s * law.scale, -law.shape);
            } else {
                double acc = 0.0;
                for (std::size_t i = 0; i < law.values.size(); ++i) {
                    acc += law.probs[i] * std::exp(s * law.values[i]);
                }
                return acc;
            }
        },
        law_);
}

double MarkDistribution::mgf_d1(double s) const {
    require_in_domain(s);
    return std::visit(
        [s](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return law.value * std::exp(s * law.value);
            } else if constexpr (std::is_same_v<T, ExponentialRate>) {
                const double d = law.beta - s;
                return law.beta / (d * d);
            } else if constexpr (std::is_same_v<T, GammaShapeScale>) {
                return law.shape * law.scale *
                       std::pow(1.0 - s * law.scale, -law.shape - 1.0);
            } else {
                double acc = 0.0;
                for (std::size_t i = 0; i < law.values.size(); ++i) {
                    acc += law.probs[i] * law.values[i] *
                           std::exp(s * law.values[i]);
                }
                return acc;
            }
        },
        law_);
}

double MarkDistribution::moment(int k) const {
    if (k < 1 || k > 4) {
        throw InvalidOrder("moment order must be in {1,2,3,4}, got " +
                           std::to_string(k));
    }
    return std::visit(
        [k](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return std::pow(law.value, k);
            } else if constexpr (std::is_same_v<T, ExponentialRate>) {
                double r = 1.0;
                for (int i = 1; i <= k; ++i) {
                    r *= static_cast<double>(i) / law.beta;
                }
                return r;
            } else if constexpr (std::is_same_v<T, GammaShapeScale>) {
                return std::pow(law.scale, k) *
                       rising_factorial(law.shape, k);
            } else {
                double acc = 0.0;
                for (std::size_t i = 0; i < law.values.size(); ++i) {
                    acc += law.probs[i] * std::pow(law.values[i], k);
                }
                return acc;
            }
        },
        law_);
}

double MarkDistribution::variance() const {
    const double m1 = moment(1);
    return moment(2) - m1 * m1;
}

double MarkDistribution::sample(CounterRng& rng) const {
    return std::visit(
        [&rng](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return law.value;
            } else if constexpr (std::is_same_v<T, ExponentialRate>) {
                return -std::log(rng.next_double()) / law.beta;
            } else if constexpr (std::is_same_v<T, GammaShapeScale>) {
                return law.scale * sample_standard_gamma(rng, law.shape);
            } else {
                const double u = rng.next_double();
                const auto it = std::lower_bound(law.cdf.begin(),
                                                 law.cdf.end(), u);
                const std::size_t i = std::min<std::size_t>(
                    static_cast<std::size_t>(it - law.cdf.begin()),
                    law.values.size() - 1);
                return law.values[i];
            }
        },
        law_);
}

} // namespace hawkes
